#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbimf/grading.hpp"
#include "orbimf/groebner.hpp"
#include "orbimf/poly.hpp"

namespace orbimf {

using PolyMatrix8 = std::array<std::array<Poly, 8>, 8>;

// Rows/columns 0-3 even, 4-7 odd; nonzero only in the off-diagonal blocks.
struct MatrixFactorization {
    VarTablePtr vars;
    PolyMatrix8 m;
    std::size_t nonzero_cells() const;
};

// six = (d15, d16, d17, d25, d26, d35)
MatrixFactorization build_8x8(const std::array<Poly, 6>& six);

PolyMatrix8 multiply(const PolyMatrix8& a, const PolyMatrix8& b);
PolyMatrix8 square(const MatrixFactorization& mf);

// d15*d26 - d16*d25 - d17*d35: the scalar M*M equals by construction.
Poly template_scalar(const std::array<Poly, 6>& six);

bool offdiagonal_zero(const PolyMatrix8& s);

struct PotentialCheck {
    bool offdiag_zero = false;
    bool diagonal_constant = false;  // all eight diagonal cells equal
    int epsilon = 0;                 // +1/-1 detected, 0 if neither sign works
    Poly scalar;                     // the common diagonal value
    // coefficient of each ring monomial in scalar - epsilon*(W_out - V_in), as
    // parameter polynomials; empty iff the identity holds unconditionally
    std::vector<std::pair<Monomial, Poly>> residual;
    std::vector<std::size_t> residual_not_in_ideal;  // indices into residual
    bool ok() const { return offdiag_zero && diagonal_constant && epsilon != 0 && residual_not_in_ideal.empty(); }
};

// Residual coefficients of s - eps*delta grouped by ring monomials and moved
// to the parameter table.
std::vector<std::pair<Monomial, Poly>> residual_coefficients(const Poly& s, const Poly& delta, int eps,
                                                             const std::vector<std::size_t>& ring,
                                                             const VarTablePtr& params);

// ideal_basis is a Groebner basis in the parameter table (may be empty).
PotentialCheck verify_potential(const MatrixFactorization& mf, const Poly& v_in, const Poly& w_out,
                                const std::vector<std::size_t>& ring, const VarTablePtr& params,
                                const std::vector<Poly>& ideal_basis);

struct GradingReport {
    bool ok = false;
    std::array<std::optional<mpq_class>, 6> degrees;  // of d15..d35
    std::map<std::string, mpq_class> parameter_degrees;
    std::array<mpq_class, 3> pair_sums;  // d15+d26, d16+d25, d17+d35
    std::vector<std::string> problems;
};

// Each entry must be weighted-homogeneous with parameters carrying degrees
// found by a linear solve, and each product pair must have degree 2.
GradingReport grading_check(const std::array<Poly, 6>& six, const VariableWeights& combined,
                            const std::vector<std::string>& parameters);

}  // namespace orbimf
