#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbimf/grading.hpp"
#include "orbimf/matfac.hpp"

namespace orbimf {

class ResidueError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// H * (f1,f2,f3)^T = (v1^N1, v2^N2, v3^N3)^T
struct CofactorLift {
    std::array<std::size_t, 3> vars{};
    std::array<unsigned, 3> n{};
    std::array<std::array<Poly, 3>, 3> h;
    Poly det;
};

enum class LiftVariant {
    Minimal,  // smallest exponents, free ansatz coefficients at zero
    Shifted,  // exponents one above minimal, columns solved in reverse order
};

// Cap default: 3 * (largest single-variable exponent of the potential) + 3.
unsigned default_degree_cap(const Poly& potential, const std::array<std::size_t, 3>& vars);

// f are weighted-homogeneous of degrees 2 - w_j under the given weights.
CofactorLift cofactor_lift(const std::array<Poly, 3>& f, const std::array<std::size_t, 3>& vars,
                           const std::array<mpq_class, 3>& weights, unsigned degree_cap,
                           LiftVariant variant = LiftVariant::Minimal);

// Lift for the partial derivatives of a quasi-homogeneous potential.
CofactorLift potential_lift(const Poly& potential, const std::array<std::size_t, 3>& vars,
                            LiftVariant variant = LiftVariant::Minimal, unsigned degree_cap = 0);

// Exact check of the defining identity.
bool lift_holds(const CofactorLift& l, const std::array<Poly, 3>& f);

// Coefficient of v^(N-1) in g*det(H); the lifted variables no longer occur.
Poly grothendieck_residue(const Poly& g, const CofactorLift& lift);

Poly supertrace(const PolyMatrix8& a);

// Product of entry-wise partial derivatives in exactly the given order.
PolyMatrix8 derivative_matrix_product(const MatrixFactorization& mf, const std::vector<std::size_t>& order);

// Supertrace of the derivative product, computing only the diagonal of the last step.
Poly supertrace_of_derivatives(const MatrixFactorization& mf, const std::vector<std::size_t>& order);

enum class Side { Left, Right };
std::string to_string(Side s);

struct QdimResult {
    Side side = Side::Left;
    Poly value;  // in the parameter table
};

struct QdimInput {
    const MatrixFactorization* mf = nullptr;
    Poly v_in, w_out;
    std::array<std::size_t, 3> in{}, out{};
    VarTablePtr params;
};

// Left integrates the out-variables against dW_out, right the in-variables
// against dV_in; the supertrace uses the order in-variables then out-variables.
QdimResult qdim(const QdimInput& in, Side side, LiftVariant variant = LiftVariant::Minimal);
std::array<QdimResult, 2> qdims(const QdimInput& in);

}  // namespace orbimf
