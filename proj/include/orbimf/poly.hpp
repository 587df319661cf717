#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "orbimf/monomial.hpp"

namespace orbimf {

class PolyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class VarTable {
public:
    explicit VarTable(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<std::size_t> index(std::string_view n) const;
    std::size_t require(std::string_view n) const;
    bool same_names(const VarTable& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> idx_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

VarTablePtr make_vars(std::vector<std::string> names);
// Concatenation with duplicates removed, first occurrence wins.
VarTablePtr merge_vars(const VarTable& a, const VarTable& b);

struct Term {
    Monomial m;
    mpq_class c;
};

class Poly {
public:
    Poly() = default;
    explicit Poly(VarTablePtr vt) : vt_(std::move(vt)) {}

    static Poly constant(VarTablePtr vt, const mpq_class& c);
    static Poly variable(VarTablePtr vt, std::size_t idx, unsigned power = 1);
    static Poly variable(VarTablePtr vt, std::string_view name, unsigned power = 1);
    static Poly monomial(VarTablePtr vt, const Monomial& m, const mpq_class& c);
    // Sorts, merges equal monomials and drops zeros.
    static Poly from_terms(VarTablePtr vt, std::vector<Term> terms);
    // Terms must already be strictly descending with nonzero coefficients.
    static Poly from_sorted(VarTablePtr vt, std::vector<Term> terms);

    const VarTablePtr& vars() const { return vt_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    mpq_class constant_value() const;
    mpq_class constant_term() const;
    const Term& lead() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const mpq_class& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const mpq_class& c) { return a *= c; }
    friend Poly operator*(const mpq_class& c, Poly a) { return a *= c; }
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly pow(unsigned n) const;
    Poly mul_term(const Monomial& m, const mpq_class& c) const;
    Poly derivative(std::size_t idx) const;
    Poly derivative(std::string_view name) const;

    // Simultaneous substitution. All bound values share one VarTable, which is
    // also the table of the result; unbound variables must exist there.
    Poly substitute(const std::map<std::string, Poly>& bindings) const;
    Poly substitute(const std::map<std::string, Poly>& bindings, const VarTablePtr& target) const;
    // Same polynomial over another table, matched by variable name.
    Poly remap(const VarTablePtr& target) const;

    // Groups by the exponents of the given variables; keys carry zeros elsewhere.
    std::map<Monomial, Poly, MonoGreater> coefficients_wrt(const std::vector<std::size_t>& ring) const;

    uint32_t total_degree() const;
    unsigned degree_in(std::size_t idx) const;
    std::vector<std::size_t> support() const;
    bool uses_only(const std::vector<std::size_t>& allowed) const;

    Poly monic() const;
    // Integer coefficients with gcd 1 and positive leading coefficient.
    Poly primitive() const;
    mpq_class eval(const std::vector<mpq_class>& point) const;

    std::string str() const;

private:
    void check_same(const Poly& o) const;

    VarTablePtr vt_;
    std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

// Exact quotient when b divides a; nullopt otherwise.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t pos, const std::string& msg);
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

Poly parse_poly(std::string_view text, const VarTablePtr& vt);
std::string format_poly(const Poly& p);
std::string format_rational(const mpq_class& q);
mpq_class parse_rational(std::string_view text);
// Canonical n/d.
mpq_class make_rational(long n, long d);

}  // namespace orbimf
