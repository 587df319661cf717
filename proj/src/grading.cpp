#include "orbimf/grading.hpp"

#include <algorithm>
#include <numeric>

#include "orbimf/linalg.hpp"

namespace orbimf {

VariableWeights weights_from_potential(const Poly& w, const std::vector<std::string>& vars) {
    if (w.is_zero()) throw GradingError("zero potential has no weights");
    std::vector<std::size_t> idx;
    for (const auto& v : vars) idx.push_back(w.vars()->require(v));
    if (!w.uses_only(idx)) throw GradingError("potential uses variables outside the given list");
    QMatrix a(w.size(), vars.size());
    std::vector<mpq_class> rhs(w.size(), 2);
    for (std::size_t r = 0; r < w.size(); ++r)
        for (std::size_t j = 0; j < vars.size(); ++j) a(r, j) = w.terms()[r].m.e[idx[j]];
    if (rank(a) < vars.size()) throw GradingError("weight system is underdetermined");
    auto x = solve(a, rhs);
    if (!x) throw GradingError("potential is not quasi-homogeneous of degree 2");
    VariableWeights out;
    for (std::size_t j = 0; j < vars.size(); ++j) out[vars[j]] = (*x)[j];
    return out;
}

mpq_class central_charge(const VariableWeights& vw) {
    mpq_class c = 0;
    for (const auto& [v, w] : vw) c += 1 - w;
    return c;
}

WeightCheck check_weight_system(const VariableWeights& vw, const WeightSystem& ws) {
    WeightCheck r;
    const int as[3] = {ws.a1, ws.a2, ws.a3};
    r.gcd_ok = std::gcd(std::gcd(ws.a1, ws.a2), ws.a3) == 1;
    if (vw.size() != 3) {
        r.message = "expected three variables";
        return r;
    }
    std::vector<std::string> names;
    for (const auto& [v, w] : vw) names.push_back(v);
    std::vector<int> perm{0, 1, 2};
    do {
        bool match = true;
        for (int k = 0; k < 3; ++k)
            if (vw.at(names[k]) != make_rational(2 * as[perm[k]], ws.h)) match = false;
        if (match) {
            for (int k = 0; k < 3; ++k) r.assignment[names[k]] = as[perm[k]];
            r.ok = r.gcd_ok;
            if (!r.gcd_ok) r.message = "weights match but gcd(a1,a2,a3) != 1";
            return r;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    // name a variable whose weight is not among 2a_i/h
    for (const auto& n : names) {
        bool found = false;
        for (int a : as)
            if (vw.at(n) == make_rational(2 * a, ws.h)) found = true;
        if (!found) {
            r.message = "weight of '" + n + "' is " + format_rational(vw.at(n)) + ", not of the form 2a_i/h";
            return r;
        }
    }
    r.message = "weights do not match the multiset {2a_i/h}";
    return r;
}

bool euler_check(const Poly& w, const VariableWeights& vw) {
    Poly e(w.vars());
    for (const auto& [v, wt] : vw) {
        auto i = w.vars()->index(v);
        if (!i) continue;
        e += (Poly::variable(w.vars(), *i) * w.derivative(*i)) * mpq_class(wt / 2);
    }
    return e == w;
}

std::optional<mpq_class> weighted_degree(const Poly& p, const VariableWeights& vw) {
    if (p.is_zero()) return std::nullopt;
    std::vector<mpq_class> wt(p.vars()->size());
    std::vector<bool> known(p.vars()->size(), false);
    for (const auto& [v, w] : vw) {
        if (auto i = p.vars()->index(v)) {
            wt[*i] = w;
            known[*i] = true;
        }
    }
    std::optional<mpq_class> deg;
    for (const auto& t : p.terms()) {
        mpq_class d = 0;
        for (std::size_t i = 0; i < wt.size(); ++i) {
            if (!t.m.e[i]) continue;
            if (!known[i]) throw GradingError("no weight for variable '" + p.vars()->name(i) + "'");
            d += wt[i] * t.m.e[i];
        }
        if (deg && *deg != d) return std::nullopt;
        deg = d;
    }
    return deg;
}

}  // namespace orbimf
