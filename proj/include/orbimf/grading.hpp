#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbimf/poly.hpp"

namespace orbimf {

class GradingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct WeightSystem {
    int a1 = 0, a2 = 0, a3 = 0, h = 0;
};

// Ring variable name -> rational degree |x| (the potential has degree 2).
using VariableWeights = std::map<std::string, mpq_class>;

VariableWeights weights_from_potential(const Poly& w, const std::vector<std::string>& vars);

mpq_class central_charge(const VariableWeights& vw);

struct WeightCheck {
    bool ok = false;
    bool gcd_ok = false;
    std::map<std::string, int> assignment;  // variable -> a_i
    std::string message;
};

WeightCheck check_weight_system(const VariableWeights& vw, const WeightSystem& ws);

bool euler_check(const Poly& w, const VariableWeights& vw);

// Weighted degree of a polynomial whose terms all share one degree; nullopt
// when inhomogeneous. Variables missing from the map are an error.
std::optional<mpq_class> weighted_degree(const Poly& p, const VariableWeights& vw);

}  // namespace orbimf
