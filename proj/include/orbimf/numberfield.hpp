#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbimf/interval.hpp"
#include "orbimf/poly.hpp"

namespace orbimf {

class QuotientError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Generator {
    std::string name;
    std::string minpoly;  // text, univariate in name
};

class QuotientSpec;

class QuotientElem {
public:
    QuotientElem() = default;
    const Poly& rep() const { return rep_; }
    const QuotientSpec* spec() const { return spec_; }
    bool is_zero() const { return rep_.is_zero(); }
    std::string str() const { return rep_.str(); }

    friend QuotientElem operator+(const QuotientElem& a, const QuotientElem& b);
    friend QuotientElem operator-(const QuotientElem& a, const QuotientElem& b);
    friend QuotientElem operator*(const QuotientElem& a, const QuotientElem& b);
    bool operator==(const QuotientElem& o) const { return rep_ == o.rep_; }

private:
    friend class QuotientSpec;
    QuotientElem(const QuotientSpec* s, Poly p) : spec_(s), rep_(std::move(p)) {}
    const QuotientSpec* spec_ = nullptr;
    Poly rep_;
};

// Q[t1..tk, extra]/(m1(t1), ..., mk(tk)). Extra variables stay symbolic;
// they are only allowed where a caller keeps some parameters free.
class QuotientSpec {
public:
    QuotientSpec(std::vector<Generator> gens, bool field, std::vector<std::string> extra = {});

    const VarTablePtr& vars() const { return vt_; }
    const std::vector<Generator>& generators() const { return gens_; }
    const Poly& minpoly(std::size_t g) const { return min_[g]; }
    unsigned degree(std::size_t g) const { return deg_[g]; }
    std::size_t generator_index(std::size_t g) const { return gidx_[g]; }
    bool field() const { return field_; }
    // Number of basis monomials prod t_i^{k_i}, k_i < deg m_i.
    std::size_t dimension() const;

    QuotientElem reduce(const Poly& p) const;
    QuotientElem from_string(const std::string& text) const;
    QuotientElem one() const;
    // nullopt when e is a zero divisor (or has symbolic extra variables).
    std::optional<QuotientElem> invert(const QuotientElem& e) const;

    std::vector<Monomial> basis() const;

private:
    const Poly& gen_power(std::size_t g, unsigned e) const;

    std::vector<Generator> gens_;
    VarTablePtr vt_;
    std::vector<Poly> min_;
    std::vector<unsigned> deg_;
    std::vector<std::size_t> gidx_;
    std::vector<bool> is_gen_;
    bool field_;
    mutable std::vector<std::vector<Poly>> powers_;
};

struct RootApprox {
    std::string re, im;  // decimal strings
};

// Point near a root of every generator's minimal polynomial together with a
// certified box around it that contains a true root.
struct Embedding {
    mpfr_prec_t prec = 0;
    std::vector<CInterval> boxes;
};

// Newton refinement from the approximations followed by the enclosure test
// |z - root| <= n |m(z)/m'(z)|. Throws QuotientError when a refined root drifts
// away from its approximation or m'(z) cannot be bounded away from 0.
Embedding enclose_roots(const QuotientSpec& spec, const std::vector<RootApprox>& approx, mpfr_prec_t prec);

// Interval guaranteed to contain the value of e at the enclosed roots.
CInterval embed_complex(const QuotientElem& e, const Embedding& emb);

struct NonzeroCertificate {
    enum class Status { Zero, Nonzero, Inconclusive };
    Status status = Status::Inconclusive;
    bool exact = false;  // decided without intervals
    mpfr_prec_t bits = 0;
    std::string enclosure;
};

NonzeroCertificate certify_nonzero(const QuotientElem& e, const std::vector<RootApprox>& approx,
                                   mpfr_prec_t start = 128, mpfr_prec_t cap = 2048);

const char* to_string(NonzeroCertificate::Status s);

}  // namespace orbimf
