#include "orbimf/constraints.hpp"

#include <algorithm>

namespace orbimf {

ConstraintSet make_constraint_set(const std::vector<Poly>& gens, std::string provenance) {
    ConstraintSet s;
    s.provenance = std::move(provenance);
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        Poly p = g.primitive();
        if (std::find(s.gens.begin(), s.gens.end(), p) == s.gens.end()) s.gens.push_back(std::move(p));
    }
    return s;
}

Derivation derive_constraints(const Entry& e, const MatrixFactorization& mf) {
    Derivation d;
    auto sq = square(mf);
    d.offdiag_zero = offdiagonal_zero(sq);
    d.diagonal_constant = true;
    for (int i = 1; i < 8; ++i)
        if (sq[i][i] != sq[0][0]) d.diagonal_constant = false;
    const auto ring = e.ring_indices();
    const Poly delta = e.w_out - e.v_in;
    std::vector<Poly> best;
    for (int eps : {1, -1}) {
        std::vector<Poly> gens;
        for (auto& [m, c] : residual_coefficients(sq[0][0], delta, eps, ring, e.params)) gens.push_back(c);
        if (d.epsilon == 0 || gens.size() < best.size()) {
            d.epsilon = eps;
            best = std::move(gens);
        }
    }
    d.constraints = make_constraint_set(best, "derived");
    return d;
}

std::optional<std::vector<Poly>> eliminate_linear(const std::vector<Poly>& gens, const std::string& var) {
    if (gens.empty()) return std::nullopt;
    const VarTablePtr& vt = gens.front().vars();
    auto vi = vt->index(var);
    if (!vi) return std::nullopt;
    for (std::size_t k = 0; k < gens.size(); ++k) {
        const Poly& g = gens[k];
        if (g.degree_in(*vi) != 1) continue;
        mpq_class a = 0;
        Poly rest(vt);
        bool ok = true;
        for (const auto& t : g.terms()) {
            if (!t.m.e[*vi]) {
                rest += Poly::monomial(vt, t.m, t.c);
                continue;
            }
            Monomial m = t.m;
            m.e[*vi] = 0;
            if (mono_degree(m) != 0) ok = false;
            a = t.c;
        }
        if (!ok) continue;
        std::map<std::string, Poly> sub{{var, rest * mpq_class(-1 / a)}};
        std::vector<Poly> out;
        for (std::size_t j = 0; j < gens.size(); ++j)
            if (j != k) {
                Poly p = gens[j].substitute(sub, vt);
                if (!p.is_zero()) out.push_back(p);
            }
        return out;
    }
    return std::nullopt;
}

FamilyPoint family_point(const Entry& e, const FamilySpec& f, bool use_defaults) {
    FamilyPoint pt;
    std::vector<std::string> names, free;
    for (const auto& g : f.generators) names.push_back(g.name);
    for (const auto& [k, v] : f.bindings)
        if (v == "free") free.push_back(k);
    names.insert(names.end(), free.begin(), free.end());
    const VarTablePtr parse_vt = make_vars(names);
    pt.ring = std::make_unique<QuotientSpec>(f.generators, f.field, use_defaults ? std::vector<std::string>{} : free);
    std::map<std::string, Poly> defaults;
    if (use_defaults)
        for (const auto& k : free) {
            auto d = f.free_defaults.find(k);
            if (d == f.free_defaults.end())
                throw CatalogError(e.data.id + ": family '" + f.label + "' has no default for " + k);
            defaults.emplace(k, Poly::constant(parse_vt, parse_rational(d->second)));
        }
    for (const auto& p : e.data.parameters) {
        auto it = f.bindings.find(p);
        if (it == f.bindings.end()) throw CatalogError(e.data.id + ": family '" + f.label + "' does not bind " + p);
        Poly v = it->second == "free" ? Poly::variable(parse_vt, p) : parse_poly(it->second, parse_vt);
        if (!defaults.empty()) v = v.substitute(defaults, parse_vt);
        pt.values.emplace(p, v.remap(pt.ring->vars()));
    }
    return pt;
}

QuotientElem evaluate_at(const Poly& p, const FamilyPoint& pt) {
    return pt.ring->reduce(p.substitute(pt.values, pt.ring->vars()));
}

FamilyReport verify_family(const Entry& e, const FamilySpec& f, const std::vector<Poly>& constraints) {
    FamilyReport r;
    r.label = f.label;
    r.role = f.role;
    auto pt = family_point(e, f, false);
    for (std::size_t k = 0; k < constraints.size(); ++k) {
        auto v = evaluate_at(constraints[k], pt);
        if (!v.is_zero()) {
            r.nonzero.push_back(k);
            r.residues.push_back(v.str());
        }
    }
    r.ok = r.nonzero.empty();
    return r;
}

NonzeroCertificate nonvanishing_check(const Entry& e, const FamilySpec& f, const Poly& value, mpfr_prec_t start,
                                      mpfr_prec_t cap) {
    auto pt = family_point(e, f, true);
    return certify_nonzero(evaluate_at(value, pt), f.roots, start, cap);
}

const char* to_string(MatchKind k) {
    switch (k) {
        case MatchKind::Exact: return "exact";
        case MatchKind::ZeroNormalForm: return "zero normal form";
        case MatchKind::UnitMultiple: return "unit multiple";
        case MatchKind::SwappedUnitMultiple: return "other side, unit multiple";
        case MatchKind::Mismatch: return "mismatch";
        case MatchKind::Missing: return "not printed";
    }
    return "?";
}

namespace {

std::optional<mpq_class> unit_ratio(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return std::nullopt;
    mpq_class r = a.lead().c / b.lead().c;
    if (a == b * r) return r;
    return std::nullopt;
}

}  // namespace

QdimMatch classify_qdim(const std::optional<Poly>& printed, const Poly& same, const Poly& other,
                        const std::vector<Poly>& basis) {
    QdimMatch m;
    if (!printed) return m;
    if (*printed == same) {
        m.kind = MatchKind::Exact;
        m.ratio = 1;
        return m;
    }
    Poly np = normal_form(*printed, basis), ns = normal_form(same, basis);
    if (np == ns) {
        m.kind = MatchKind::ZeroNormalForm;
        m.ratio = 1;
        return m;
    }
    if (auto r = unit_ratio(np, ns)) {
        m.kind = MatchKind::UnitMultiple;
        m.ratio = *r;
        return m;
    }
    if (auto r = unit_ratio(np, normal_form(other, basis))) {
        m.kind = MatchKind::SwappedUnitMultiple;
        m.ratio = *r;
        return m;
    }
    m.kind = MatchKind::Mismatch;
    return m;
}

}  // namespace orbimf
