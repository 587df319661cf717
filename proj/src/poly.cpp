#include "orbimf/poly.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace orbimf {

VarTable::VarTable(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() > kMaxVars)
        throw PolyError("too many variables (" + std::to_string(names_.size()) + " > " +
                        std::to_string(kMaxVars) + ")");
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (!idx_.emplace(names_[i], i).second) throw PolyError("duplicate variable '" + names_[i] + "'");
    }
}

std::optional<std::size_t> VarTable::index(std::string_view n) const {
    auto it = idx_.find(std::string(n));
    if (it == idx_.end()) return std::nullopt;
    return it->second;
}

std::size_t VarTable::require(std::string_view n) const {
    auto i = index(n);
    if (!i) throw PolyError("unknown variable '" + std::string(n) + "'");
    return *i;
}

VarTablePtr make_vars(std::vector<std::string> names) {
    return std::make_shared<const VarTable>(std::move(names));
}

VarTablePtr merge_vars(const VarTable& a, const VarTable& b) {
    std::vector<std::string> n = a.names();
    for (const auto& s : b.names())
        if (!a.index(s)) n.push_back(s);
    return make_vars(std::move(n));
}

Poly Poly::constant(VarTablePtr vt, const mpq_class& c) {
    Poly p(std::move(vt));
    if (c != 0) p.terms_.push_back({Monomial{}, c});
    if (!p.terms_.empty()) p.terms_[0].c.canonicalize();
    return p;
}

Poly Poly::variable(VarTablePtr vt, std::size_t idx, unsigned power) {
    if (idx >= vt->size()) throw PolyError("variable index out of range");
    Monomial m;
    m.e[idx] = static_cast<uint16_t>(power);
    Poly p(std::move(vt));
    p.terms_.push_back({m, 1});
    return p;
}

Poly Poly::variable(VarTablePtr vt, std::string_view name, unsigned power) {
    std::size_t i = vt->require(name);
    return variable(std::move(vt), i, power);
}

Poly Poly::monomial(VarTablePtr vt, const Monomial& m, const mpq_class& c) {
    Poly p(std::move(vt));
    if (c != 0) p.terms_.push_back({m, c});
    if (!p.terms_.empty()) p.terms_[0].c.canonicalize();
    return p;
}

Poly Poly::from_terms(VarTablePtr vt, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return mono_cmp(a.m, b.m) > 0; });
    for (auto& t : terms) t.c.canonicalize();
    Poly p(std::move(vt));
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().m == t.m) {
            p.terms_.back().c += t.c;
            if (p.terms_.back().c == 0) p.terms_.pop_back();
        } else if (t.c != 0) {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

Poly Poly::from_sorted(VarTablePtr vt, std::vector<Term> terms) {
    Poly p(std::move(vt));
    p.terms_ = std::move(terms);
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && mono_degree(terms_[0].m) == 0);
}

mpq_class Poly::constant_value() const {
    if (!is_constant()) throw PolyError("polynomial is not constant: " + str());
    return terms_.empty() ? mpq_class(0) : terms_[0].c;
}

mpq_class Poly::constant_term() const {
    if (!terms_.empty() && mono_degree(terms_.back().m) == 0) return terms_.back().c;
    return 0;
}

const Term& Poly::lead() const {
    if (terms_.empty()) throw PolyError("leading term of zero polynomial");
    return terms_[0];
}

void Poly::check_same(const Poly& o) const {
    if (vt_ == o.vt_) return;
    if (!vt_ || !o.vt_) {
        if ((vt_ && o.is_zero() && !o.vt_) || (o.vt_ && is_zero() && !vt_)) return;
        throw PolyError("operation on polynomial without variable table");
    }
    if (!vt_->same_names(*o.vt_)) throw PolyError("variable table mismatch");
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
}

namespace {

std::vector<Term> merge_add(const std::vector<Term>& a, const std::vector<Term>& b, bool negate_b) {
    std::vector<Term> r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = mono_cmp(a[i].m, b[j].m);
        if (c > 0) {
            r.push_back(a[i++]);
        } else if (c < 0) {
            r.push_back(b[j]);
            if (negate_b) r.back().c = -r.back().c;
            ++j;
        } else {
            mpq_class s = negate_b ? mpq_class(a[i].c - b[j].c) : mpq_class(a[i].c + b[j].c);
            if (s != 0) r.push_back({a[i].m, std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) r.push_back(a[i]);
    for (; j < b.size(); ++j) {
        r.push_back(b[j]);
        if (negate_b) r.back().c = -r.back().c;
    }
    return r;
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
    check_same(o);
    if (!vt_) vt_ = o.vt_;
    if (o.terms_.empty()) return *this;
    terms_ = merge_add(terms_, o.terms_, false);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check_same(o);
    if (!vt_) vt_ = o.vt_;
    if (o.terms_.empty()) return *this;
    terms_ = merge_add(terms_, o.terms_, true);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.check_same(b);
    Poly r(a.vt_ ? a.vt_ : b.vt_);
    if (a.terms_.empty() || b.terms_.empty()) return r;
    if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].m, a.terms_[0].c);
    if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].m, b.terms_[0].c);
    std::unordered_map<Monomial, mpq_class, MonoHash> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    mpq_class prod;
    for (const auto& x : a.terms_) {
        for (const auto& y : b.terms_) {
            prod = x.c * y.c;
            auto [it, fresh] = acc.try_emplace(x.m * y.m, prod);
            if (!fresh) it->second += prod;
        }
    }
    std::vector<Term> t;
    t.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) t.push_back({m, std::move(c)});
    std::sort(t.begin(), t.end(), [](const Term& u, const Term& v) { return mono_cmp(u.m, v.m) > 0; });
    r.terms_ = std::move(t);
    return r;
}

Poly& Poly::operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
}

Poly& Poly::operator*=(const mpq_class& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.c *= c;
    return *this;
}

bool Poly::operator==(const Poly& o) const {
    check_same(o);
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].m != o.terms_[i].m || terms_[i].c != o.terms_[i].c) return false;
    return true;
}

Poly Poly::mul_term(const Monomial& m, const mpq_class& c) const {
    Poly r(vt_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.m * m, t.c * c});
    return r;
}

Poly Poly::pow(unsigned n) const {
    Poly result = constant(vt_, 1);
    Poly base = *this;
    while (n) {
        if (n & 1u) result = result * base;
        n >>= 1u;
        if (n) base = base * base;
    }
    return result;
}

Poly Poly::derivative(std::size_t idx) const {
    if (!vt_ || idx >= vt_->size()) throw PolyError("derivative: variable index out of range");
    std::vector<Term> t;
    for (const auto& x : terms_) {
        if (x.m.e[idx] == 0) continue;
        Term y{x.m, x.c * x.m.e[idx]};
        y.m.e[idx] -= 1;
        t.push_back(std::move(y));
    }
    return from_terms(vt_, std::move(t));
}

Poly Poly::derivative(std::string_view name) const {
    if (!vt_) throw PolyError("derivative of polynomial without variable table");
    return derivative(vt_->require(name));
}

Poly Poly::substitute(const std::map<std::string, Poly>& bindings) const {
    VarTablePtr target;
    for (const auto& [k, v] : bindings) {
        if (!target) target = v.vars();
        else if (v.vars() && !(v.vars() == target || v.vars()->same_names(*target)))
            throw PolyError("substitute: bindings do not share a variable table");
    }
    if (!target) target = vt_;
    return substitute(bindings, target);
}

Poly Poly::substitute(const std::map<std::string, Poly>& bindings, const VarTablePtr& target) const {
    const std::size_t n = vt_ ? vt_->size() : 0;
    std::vector<std::optional<Poly>> val(n);
    std::vector<std::optional<std::size_t>> pass(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto it = bindings.find(vt_->name(i));
        if (it != bindings.end()) {
            Poly v = it->second;
            if (!v.vars()) v = Poly(target);
            else if (v.vars() != target) v = v.remap(target);
            val[i] = std::move(v);
        } else {
            pass[i] = target->index(vt_->name(i));
        }
    }
    std::vector<std::vector<Poly>> powers(n);
    auto power_of = [&](std::size_t i, unsigned e) -> const Poly& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(constant(target, 1));
        while (cache.size() <= e) cache.push_back(cache.back() * *val[i]);
        return cache[e];
    };
    std::vector<Term> direct;
    Poly out(target);
    for (const auto& t : terms_) {
        Monomial m;
        Poly factor = constant(target, t.c);
        bool have_factor = false;
        for (std::size_t i = 0; i < n; ++i) {
            unsigned e = t.m.e[i];
            if (!e) continue;
            if (val[i]) {
                factor = factor * power_of(i, e);
                have_factor = true;
            } else {
                if (!pass[i]) throw PolyError("substitute: variable '" + vt_->name(i) + "' missing from target table");
                m.e[*pass[i]] = static_cast<uint16_t>(m.e[*pass[i]] + e);
            }
        }
        if (!have_factor) {
            direct.push_back({m, t.c});
        } else {
            out += factor.mul_term(m, 1);
        }
    }
    if (!direct.empty()) out += from_terms(target, std::move(direct));
    return out;
}

Poly Poly::remap(const VarTablePtr& target) const {
    if (vt_ == target) return *this;
    const std::size_t n = vt_ ? vt_->size() : 0;
    std::vector<std::optional<std::size_t>> to(n);
    for (std::size_t i = 0; i < n; ++i) to[i] = target->index(vt_->name(i));
    std::vector<Term> t;
    t.reserve(terms_.size());
    for (const auto& x : terms_) {
        Monomial m;
        for (std::size_t i = 0; i < n; ++i) {
            if (!x.m.e[i]) continue;
            if (!to[i]) throw PolyError("variable '" + vt_->name(i) + "' not present in target table");
            m.e[*to[i]] = x.m.e[i];
        }
        t.push_back({m, x.c});
    }
    return from_terms(target, std::move(t));
}

std::map<Monomial, Poly, MonoGreater> Poly::coefficients_wrt(const std::vector<std::size_t>& ring) const {
    std::map<Monomial, std::vector<Term>, MonoGreater> groups;
    for (const auto& t : terms_) {
        Monomial key, rest = t.m;
        for (auto i : ring) {
            key.e[i] = t.m.e[i];
            rest.e[i] = 0;
        }
        groups[key].push_back({rest, t.c});
    }
    std::map<Monomial, Poly, MonoGreater> out;
    for (auto& [k, v] : groups) out.emplace(k, from_terms(vt_, std::move(v)));
    return out;
}

uint32_t Poly::total_degree() const {
    uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, mono_degree(t.m));
    return d;
}

unsigned Poly::degree_in(std::size_t idx) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max<unsigned>(d, t.m.e[idx]);
    return d;
}

std::vector<std::size_t> Poly::support() const {
    std::vector<std::size_t> out;
    if (!vt_) return out;
    for (std::size_t i = 0; i < vt_->size(); ++i)
        if (degree_in(i)) out.push_back(i);
    return out;
}

bool Poly::uses_only(const std::vector<std::size_t>& allowed) const {
    for (auto i : support())
        if (std::find(allowed.begin(), allowed.end(), i) == allowed.end()) return false;
    return true;
}

Poly Poly::monic() const {
    if (terms_.empty()) return *this;
    mpq_class inv = 1 / terms_[0].c;
    return *this * inv;
}

Poly Poly::primitive() const {
    if (terms_.empty()) return *this;
    mpz_class den = 1, num = 0;
    for (const auto& t : terms_) den = lcm(den, mpz_class(t.c.get_den()));
    for (const auto& t : terms_) num = gcd(num, mpz_class(t.c.get_num()));
    mpq_class f(den, num);
    f.canonicalize();
    if (terms_[0].c < 0) f = -f;
    return *this * f;
}

mpq_class Poly::eval(const std::vector<mpq_class>& point) const {
    mpq_class s = 0;
    for (const auto& t : terms_) {
        mpq_class v = t.c;
        for (std::size_t i = 0; i < point.size() && i < kMaxVars; ++i) {
            for (unsigned k = 0; k < t.m.e[i]; ++k) v *= point[i];
        }
        s += v;
    }
    return s;
}

std::string Poly::str() const { return format_poly(*this); }

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << format_poly(p); }

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw PolyError("division by zero polynomial");
    const Term& lb = b.lead();
    Poly rem = a;
    std::vector<Term> q;
    while (!rem.is_zero()) {
        const Term& lr = rem.lead();
        if (!mono_divides(lb.m, lr.m)) return std::nullopt;
        Monomial m = mono_div(lr.m, lb.m);
        mpq_class c = lr.c / lb.c;
        q.push_back({m, c});
        rem -= b.mul_term(m, c);
    }
    return Poly::from_sorted(a.vars() ? a.vars() : b.vars(), std::move(q));
}

}  // namespace orbimf
