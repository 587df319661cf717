#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbimf/poly.hpp"

namespace orbimf {

class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Dense univariate polynomial, coefficient k belongs to t^k.
using UPoly = std::vector<mpq_class>;

UPoly to_upoly(const Poly& p, std::size_t var);  // p must involve only var
Poly from_upoly(const UPoly& u, const VarTablePtr& vt, std::size_t var);
void trim(UPoly& u);
UPoly upoly_gcd(UPoly a, UPoly b);  // monic
UPoly upoly_derivative(const UPoly& u);
UPoly upoly_divexact(const UPoly& a, const UPoly& b);
// Yun: squarefree parts s_1, s_2, ... with u = c * prod s_i^i; empty parts omitted.
std::vector<std::pair<UPoly, unsigned>> squarefree_decomposition(const UPoly& u);
// t^n u(1/t)
UPoly reciprocal(const UPoly& u);

// Fraction-free (Bareiss) determinant; entries share one table.
Poly bareiss_determinant(std::vector<std::vector<Poly>> m);
Poly sylvester_resultant(const Poly& a, const Poly& b, std::size_t var);

struct OracleCandidate {
    Poly minpoly;       // univariate in the target parameter
    unsigned multiplicity = 1;
    bool certified = false;
    std::map<std::string, std::string> solution;  // back-substituted values, as quotient elements
    std::string note;
};

struct OracleReport {
    std::string target;
    std::vector<std::string> steps;
    Poly univariate;  // gcd of the eliminated system, powers of the target removed
    std::vector<OracleCandidate> candidates;
};

struct OracleOptions {
    std::size_t max_terms = 200000;  // abort when an intermediate resultant grows beyond this
};

// Successive Sylvester elimination down to the target parameter, then Yun
// splitting and back-substitution of every squarefree factor in Q[t]/(factor).
OracleReport bruteforce_family_oracle(const std::vector<Poly>& system, const std::map<std::string, std::string>& assignments,
                                      const std::string& target, const OracleOptions& opt = {});

}  // namespace orbimf
