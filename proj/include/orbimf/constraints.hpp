#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orbimf/catalog.hpp"
#include "orbimf/groebner.hpp"
#include "orbimf/matfac.hpp"
#include "orbimf/numberfield.hpp"

namespace orbimf {

struct ConstraintSet {
    std::vector<Poly> gens;  // primitive, deduplicated, nonzero
    std::string provenance;  // derived | paper | simplified
};

ConstraintSet make_constraint_set(const std::vector<Poly>& gens, std::string provenance);

struct Derivation {
    int epsilon = 0;
    bool offdiag_zero = false;
    bool diagonal_constant = false;
    ConstraintSet constraints;
};

// Coefficients of square(M) - eps*(W_out - V_in)*Id; eps is the sign giving
// fewer coefficients, +1 on a tie.
Derivation derive_constraints(const Entry& e, const MatrixFactorization& mf);

// Substitute a variable that occurs linearly with a constant coefficient in
// some generator, dropping that generator; nullopt if there is none.
std::optional<std::vector<Poly>> eliminate_linear(const std::vector<Poly>& gens, const std::string& var);

// Quotient ring of a family plus parameter values inside it.
struct FamilyPoint {
    std::unique_ptr<QuotientSpec> ring;
    std::map<std::string, Poly> values;  // parameter -> element of ring->vars()
};

// With use_defaults the free parameters take their default values, otherwise
// they stay symbolic in the quotient ring.
FamilyPoint family_point(const Entry& e, const FamilySpec& f, bool use_defaults);
QuotientElem evaluate_at(const Poly& p, const FamilyPoint& pt);

struct FamilyReport {
    std::string label;
    std::string role;
    bool ok = false;
    std::vector<std::size_t> nonzero;  // constraint indices that do not vanish
    std::vector<std::string> residues;  // their reduced values
};

FamilyReport verify_family(const Entry& e, const FamilySpec& f, const std::vector<Poly>& constraints);

NonzeroCertificate nonvanishing_check(const Entry& e, const FamilySpec& f, const Poly& value,
                                      mpfr_prec_t start = 128, mpfr_prec_t cap = 2048);

enum class MatchKind { Exact, ZeroNormalForm, UnitMultiple, SwappedUnitMultiple, Mismatch, Missing };
const char* to_string(MatchKind k);

struct QdimMatch {
    MatchKind kind = MatchKind::Missing;
    mpq_class ratio = 0;  // printed = ratio * computed (modulo the ideal) for unit multiples
};

// printed vs computed on the same side, then against the other side.
QdimMatch classify_qdim(const std::optional<Poly>& printed, const Poly& same, const Poly& other,
                        const std::vector<Poly>& basis);

}  // namespace orbimf
