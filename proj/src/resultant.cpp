#include "orbimf/resultant.hpp"

#include <algorithm>
#include <set>

#include "orbimf/numberfield.hpp"

namespace orbimf {

void trim(UPoly& u) {
    while (!u.empty() && u.back() == 0) u.pop_back();
}

UPoly to_upoly(const Poly& p, std::size_t var) {
    UPoly u;
    for (const auto& t : p.terms()) {
        for (std::size_t i = 0; i < p.vars()->size(); ++i)
            if (i != var && t.m.e[i]) throw OracleError("polynomial is not univariate in " + p.vars()->name(var));
        std::size_t k = t.m.e[var];
        if (u.size() <= k) u.resize(k + 1, 0);
        u[k] = t.c;
    }
    return u;
}

Poly from_upoly(const UPoly& u, const VarTablePtr& vt, std::size_t var) {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (u[k] == 0) continue;
        Monomial m;
        m.e[var] = static_cast<uint16_t>(k);
        terms.push_back({m, u[k]});
    }
    return Poly::from_terms(vt, std::move(terms));
}

namespace {

// a = q b + r
void divmod(UPoly a, const UPoly& b, UPoly& q, UPoly& r) {
    trim(a);
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    while (a.size() >= b.size() && !a.empty()) {
        std::size_t s = a.size() - b.size();
        mpq_class c = a.back() / b.back();
        q[s] = c;
        for (std::size_t k = 0; k < b.size(); ++k) a[s + k] -= c * b[k];
        trim(a);
    }
    r = std::move(a);
}

UPoly monic(UPoly u) {
    trim(u);
    if (u.empty()) return u;
    mpq_class l = u.back();
    for (auto& c : u) c /= l;
    return u;
}

}  // namespace

UPoly upoly_gcd(UPoly a, UPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UPoly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

UPoly upoly_derivative(const UPoly& u) {
    UPoly d;
    for (std::size_t k = 1; k < u.size(); ++k) d.push_back(u[k] * static_cast<unsigned long>(k));
    trim(d);
    return d;
}

UPoly upoly_divexact(const UPoly& a, const UPoly& b) {
    UPoly q, r;
    divmod(a, b, q, r);
    if (!r.empty()) throw OracleError("inexact univariate division");
    trim(q);
    return q;
}

std::vector<std::pair<UPoly, unsigned>> squarefree_decomposition(const UPoly& u0) {
    std::vector<std::pair<UPoly, unsigned>> out;
    UPoly u = monic(u0);
    if (u.size() <= 1) return out;
    UPoly a = upoly_gcd(u, upoly_derivative(u));
    UPoly b = upoly_divexact(u, a);
    UPoly c = upoly_divexact(upoly_derivative(u), a);
    UPoly d = c;
    {
        UPoly db = upoly_derivative(b);
        d.resize(std::max(d.size(), db.size()), 0);
        for (std::size_t k = 0; k < db.size(); ++k) d[k] -= db[k];
        trim(d);
    }
    unsigned i = 1;
    while (b.size() > 1) {
        UPoly g = upoly_gcd(b, d);
        if (g.size() > 1) out.emplace_back(g, i);
        b = upoly_divexact(b, g);
        c = upoly_divexact(d, g);
        d = c;
        UPoly db = upoly_derivative(b);
        d.resize(std::max(d.size(), db.size()), 0);
        for (std::size_t k = 0; k < db.size(); ++k) d[k] -= db[k];
        trim(d);
        ++i;
    }
    return out;
}

UPoly reciprocal(const UPoly& u0) {
    UPoly u = u0;
    trim(u);
    std::reverse(u.begin(), u.end());
    trim(u);
    return u;
}

Poly bareiss_determinant(std::vector<std::vector<Poly>> m) {
    const std::size_t n = m.size();
    if (n == 0) throw OracleError("empty matrix");
    VarTablePtr vt = m[0][0].vars();
    Poly prev = Poly::constant(vt, 1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t r = k + 1;
            while (r < n && m[r][k].is_zero()) ++r;
            if (r == n) return Poly(vt);
            std::swap(m[k], m[r]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                auto q = divide_exact(num, prev);
                if (!q) throw OracleError("Bareiss step is not exact");
                m[i][j] = std::move(*q);
            }
            m[i][k] = Poly(vt);
        }
        prev = m[k][k];
    }
    Poly d = m[n - 1][n - 1];
    return negate ? -d : d;
}

Poly sylvester_resultant(const Poly& a, const Poly& b, std::size_t var) {
    VarTablePtr vt = a.vars();
    const unsigned da = a.degree_in(var), db = b.degree_in(var);
    if (da == 0 && db == 0) throw OracleError("resultant needs the variable in at least one polynomial");
    auto coeffs = [&](const Poly& p, unsigned d) {
        std::vector<Poly> c(d + 1, Poly(vt));
        for (const auto& t : p.terms()) {
            Monomial m = t.m;
            unsigned k = m.e[var];
            m.e[var] = 0;
            c[k] += Poly::monomial(vt, m, t.c);
        }
        return c;
    };
    auto ca = coeffs(a, da), cb = coeffs(b, db);
    const std::size_t n = da + db;
    std::vector<std::vector<Poly>> s(n, std::vector<Poly>(n, Poly(vt)));
    for (std::size_t r = 0; r < db; ++r)
        for (std::size_t k = 0; k <= da; ++k) s[r][r + k] = ca[da - k];
    for (std::size_t r = 0; r < da; ++r)
        for (std::size_t k = 0; k <= db; ++k) s[db + r][r + k] = cb[db - k];
    return bareiss_determinant(std::move(s));
}

namespace {

// Values of eliminated variables by back-substitution, newest first. A
// variable no equation determines linearly stays symbolic; the final check
// then decides whether the system holds for all its values.
// stages[k] holds the equations that contained order[k] when it was eliminated.
bool back_substitute(const std::vector<Poly>& system, const std::vector<std::string>& order,
                     const std::vector<std::vector<Poly>>& stages, const std::string& target, const UPoly& factor,
                     OracleCandidate& cand) {
    const VarTablePtr& pv = system.front().vars();
    const std::string minpoly = format_poly(from_upoly(factor, make_vars({target}), 0));
    QuotientSpec q({{target, minpoly}}, false);
    std::vector<std::string> extra;
    for (std::size_t i = 0; i < pv->size(); ++i)
        if (pv->name(i) != target) extra.push_back(pv->name(i));
    QuotientSpec full({{target, minpoly}}, false, extra);
    const VarTablePtr& fv = full.vars();
    std::map<std::string, Poly> sub;
    for (std::size_t i = 0; i < pv->size(); ++i) sub.emplace(pv->name(i), Poly::variable(fv, pv->name(i)));
    auto current = [&](const Poly& p) { return full.reduce(p.substitute(sub, fv)).rep(); };
    std::vector<std::size_t> decided{fv->require(target)};
    std::vector<std::string> free;
    for (std::size_t k = order.size(); k-- > 0;) {
        const std::string& v = order[k];
        const std::size_t vi = fv->require(v);
        bool solved = false;
        std::vector<Poly> pool = stages[k];
        pool.insert(pool.end(), system.begin(), system.end());
        for (const auto& g : pool) {
            Poly r = current(g);
            if (r.degree_in(vi) != 1) continue;
            // r = a v + b, a in the target only, b free of undecided variables
            Poly a(fv), b(fv);
            for (const auto& t : r.terms()) {
                Monomial m = t.m;
                if (m.e[vi]) {
                    m.e[vi] = 0;
                    a += Poly::monomial(fv, m, t.c);
                } else {
                    b += Poly::monomial(fv, m, t.c);
                }
            }
            if (!a.uses_only({decided[0]}) || !b.uses_only(decided)) continue;
            auto inv = q.invert(q.reduce(a.remap(q.vars())));
            if (!inv) continue;
            Poly val = full.reduce(-b * inv->rep().remap(fv)).rep();
            sub[v] = val;
            cand.solution[v] = format_poly(val);
            solved = true;
            break;
        }
        if (!solved) free.push_back(v);
        decided.push_back(vi);
    }
    for (const auto& v : free) cand.solution[v] = "free";
    for (const auto& g : system)
        if (!current(g).is_zero()) {
            cand.note = "back-substitution leaves a nonzero equation";
            if (!free.empty()) {
                cand.note += "; not determined linearly:";
                for (const auto& v : free) cand.note += " " + v;
            }
            return false;
        }
    return true;
}

}  // namespace

OracleReport bruteforce_family_oracle(const std::vector<Poly>& system0, const std::map<std::string, std::string>& assignments,
                                      const std::string& target, const OracleOptions& opt) {
    if (system0.empty()) throw OracleError("empty system");
    const VarTablePtr& vt = system0.front().vars();
    OracleReport rep;
    rep.target = target;
    const std::size_t ti = vt->require(target);
    std::map<std::string, Poly> sub;
    for (const auto& [k, v] : assignments) sub.emplace(k, parse_poly(v, vt));
    std::vector<Poly> system;
    for (const auto& p : system0) {
        Poly s = p.substitute(sub, vt);
        if (s.is_zero()) continue;
        if (s.is_constant()) throw OracleError("assignments make the system inconsistent");
        system.push_back(s.primitive());
    }
    std::vector<Poly> eqs = system;
    std::vector<std::string> order;
    std::vector<std::vector<Poly>> stages;
    while (true) {
        std::set<std::size_t> vars;
        for (const auto& e : eqs)
            for (auto i : e.support())
                if (i != ti) vars.insert(i);
        if (vars.empty()) break;
        std::size_t best = 0;
        unsigned bestdeg = ~0u;
        for (auto v : vars) {
            unsigned d = 0;
            for (const auto& e : eqs) d = std::max(d, e.degree_in(v));
            if (d < bestdeg || (d == bestdeg && vt->name(v) < vt->name(best))) {
                bestdeg = d;
                best = v;
            }
        }
        std::vector<Poly> with, without;
        for (auto& e : eqs) (e.degree_in(best) ? with : without).push_back(std::move(e));
        std::size_t piv = 0;
        for (std::size_t k = 1; k < with.size(); ++k) {
            unsigned dk = with[k].degree_in(best), dp = with[piv].degree_in(best);
            if (dk < dp || (dk == dp && with[k].size() < with[piv].size())) piv = k;
        }
        std::size_t produced = 0;
        for (std::size_t k = 0; k < with.size(); ++k) {
            if (k == piv) continue;
            Poly r = sylvester_resultant(with[piv], with[k], best);
            if (r.is_zero()) continue;
            if (r.size() > opt.max_terms) throw OracleError("intermediate resultant exceeds the term cap");
            r = r.primitive();
            // drop repeated copies
            if (std::find(without.begin(), without.end(), r) == without.end()) without.push_back(r);
            ++produced;
        }
        rep.steps.push_back("eliminate " + vt->name(best) + " (pivot degree " + std::to_string(with[piv].degree_in(best)) +
                            ", " + std::to_string(produced) + " resultants)");
        order.push_back(vt->name(best));
        stages.push_back(with);
        eqs = std::move(without);
    }
    UPoly g;
    for (const auto& e : eqs) g = g.empty() ? to_upoly(e, ti) : upoly_gcd(g, to_upoly(e, ti));
    trim(g);
    if (g.empty()) throw OracleError("elimination left no equation in " + target);
    // remove powers of the target
    std::size_t low = 0;
    while (low < g.size() && g[low] == 0) ++low;
    g.erase(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(low));
    rep.univariate = from_upoly(g, vt, ti).primitive();
    auto tvt = make_vars({target});
    for (const auto& [part, mult] : squarefree_decomposition(g)) {
        OracleCandidate c;
        c.minpoly = from_upoly(part, tvt, 0).primitive();
        c.multiplicity = mult;
        c.certified = back_substitute(system, order, stages, target, part, c);
        rep.candidates.push_back(std::move(c));
    }
    return rep;
}

}  // namespace orbimf
