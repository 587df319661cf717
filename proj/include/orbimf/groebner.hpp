#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "orbimf/poly.hpp"

namespace orbimf {

class GroebnerBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GroebnerOptions {
    std::size_t spair_cap = 50000;
};

struct GroebnerStats {
    std::size_t spairs = 0;        // S-polynomials actually reduced
    std::size_t skipped = 0;       // pairs removed by the criteria
    std::size_t zero_reductions = 0;
};

// Reduced Groebner basis (monic, sorted by leading monomial) in degrevlex.
std::vector<Poly> groebner(const std::vector<Poly>& gens, const GroebnerOptions& opt = {},
                           GroebnerStats* stats = nullptr);

// Full reduction of p by the basis; zero iff p lies in the ideal when the
// basis is a Groebner basis.
Poly normal_form(const Poly& p, const std::vector<Poly>& basis);

struct IdealComparison {
    bool a_in_b = false;
    bool b_in_a = false;
    std::vector<std::size_t> a_not_in_b;  // indices into A
    std::vector<std::size_t> b_not_in_a;  // indices into B
    bool equal() const { return a_in_b && b_in_a; }
};

IdealComparison ideal_compare(const std::vector<Poly>& a, const std::vector<Poly>& b,
                              const GroebnerOptions& opt = {});

// Variant that reuses precomputed bases.
IdealComparison ideal_compare_bases(const std::vector<Poly>& a, const std::vector<Poly>& gb_a,
                                    const std::vector<Poly>& b, const std::vector<Poly>& gb_b);

bool is_unit_ideal(const std::vector<Poly>& basis);

}  // namespace orbimf
