#include <cctype>
#include <sstream>

#include "orbimf/poly.hpp"

namespace orbimf {

ParseError::ParseError(std::size_t pos, const std::string& msg)
    : std::runtime_error("parse error at " + std::to_string(pos) + ": " + msg), pos_(pos) {}

namespace {

class Parser {
public:
    Parser(std::string_view s, const VarTablePtr& vt) : s_(s), vt_(vt) {}

    Poly run() {
        skip();
        if (pos_ >= s_.size()) throw ParseError(pos_, "empty expression");
        Poly p = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError(pos_, std::string("unexpected '") + s_[pos_] + "'");
        return p;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool peek_digit() {
        skip();
        return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
    }

    mpz_class integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError(pos_, "expected integer");
        return mpz_class(std::string(s_.substr(start, pos_ - start)));
    }

    Poly expr() {
        Poly acc = unary();
        for (;;) {
            if (eat('+')) acc += unary();
            else if (eat('-')) acc -= unary();
            else return acc;
        }
    }

    Poly unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return term();
    }

    Poly term() {
        Poly acc = factor();
        while (eat('*')) {
            Poly rhs = eat('-') ? -unary_factor() : unary_factor();
            acc = acc * rhs;
        }
        return acc;
    }

    Poly unary_factor() {
        if (eat('-')) return -unary_factor();
        return factor();
    }

    Poly factor() {
        Poly b = base();
        if (eat('^')) {
            if (!peek_digit()) throw ParseError(pos_, "exponent must be a natural number");
            mpz_class e = integer();
            if (e > 65535) throw ParseError(pos_, "exponent too large");
            b = b.pow(static_cast<unsigned>(e.get_ui()));
        }
        if (eat('/')) {
            if (!peek_digit()) throw ParseError(pos_, "divisor must be a nonzero integer literal");
            std::size_t at = pos_;
            mpz_class d = integer();
            if (d == 0) throw ParseError(at, "division by zero");
            b *= mpq_class(1, d);
        }
        return b;
    }

    Poly base() {
        skip();
        if (pos_ >= s_.size()) throw ParseError(pos_, "unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            if (!eat(')')) throw ParseError(pos_, "expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return Poly::constant(vt_, mpq_class(integer()));
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string id(s_.substr(start, pos_ - start));
            auto idx = vt_->index(id);
            if (!idx) throw ParseError(start, "undeclared identifier '" + id + "'");
            return Poly::variable(vt_, *idx);
        }
        throw ParseError(pos_, std::string("unexpected '") + c + "'");
    }

    std::string_view s_;
    const VarTablePtr& vt_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const VarTablePtr& vt) {
    if (!vt) throw PolyError("parse_poly: no variable table");
    return Parser(text, vt).run();
}

std::string format_rational(const mpq_class& r) {
    mpq_class q = r;
    q.canonicalize();
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class parse_rational(std::string_view text) {
    auto vt = make_vars({});
    Poly p = parse_poly(text, vt);
    return p.constant_value();
}

std::string format_poly(const Poly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : p.terms()) {
        mpq_class c = t.c;
        if (first) {
            if (c < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < p.vars()->size(); ++i) {
            unsigned e = t.m.e[i];
            if (!e) continue;
            if (!mono.empty()) mono += "*";
            mono += p.vars()->name(i);
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) {
            os << format_rational(c);
        } else if (c == 1) {
            os << mono;
        } else {
            os << format_rational(c) << "*" << mono;
        }
    }
    return os.str();
}

mpq_class make_rational(long n, long d) {
    if (d == 0) throw PolyError("zero denominator");
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

}  // namespace orbimf
