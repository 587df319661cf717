#include "orbimf/residue.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "orbimf/linalg.hpp"

namespace orbimf {

namespace {

// Exponent vectors over three variables with weighted degree exactly d.
std::vector<std::array<unsigned, 3>> weighted_monomials(const std::array<mpq_class, 3>& w, const mpq_class& d) {
    std::vector<std::array<unsigned, 3>> out;
    if (d < 0) return out;
    std::array<unsigned, 3> top{};
    for (int i = 0; i < 3; ++i) {
        mpq_class q = d / w[i];
        top[i] = static_cast<unsigned>(mpz_class(q.get_num() / q.get_den()).get_ui());
    }
    for (unsigned a = 0; a <= top[0]; ++a)
        for (unsigned b = 0; b <= top[1]; ++b) {
            mpq_class rest = d - w[0] * a - w[1] * b;
            if (rest < 0) break;
            mpq_class c = rest / w[2];
            if (c.get_den() == 1) out.push_back({a, b, static_cast<unsigned>(c.get_num().get_ui())});
        }
    return out;
}

Monomial make_mono(const std::array<std::size_t, 3>& vars, const std::array<unsigned, 3>& e) {
    Monomial m;
    for (int i = 0; i < 3; ++i) m.e[vars[i]] = static_cast<uint16_t>(e[i]);
    return m;
}

// Row i of the lift: sum_j h_j f_j = v_i^N, or nullopt.
std::optional<std::array<Poly, 3>> lift_row(const std::array<Poly, 3>& f, const std::array<std::size_t, 3>& vars,
                                            const std::array<mpq_class, 3>& w, std::size_t i, unsigned n,
                                            bool reverse) {
    const VarTablePtr& vt = f[0].vars();
    std::vector<std::pair<std::size_t, Monomial>> unknowns;
    for (std::size_t j = 0; j < 3; ++j) {
        mpq_class dj = w[i] * n - (2 - w[j]);
        for (const auto& e : weighted_monomials(w, dj)) unknowns.emplace_back(j, make_mono(vars, e));
    }
    std::map<Monomial, std::size_t, MonoGreater> rowof;
    std::vector<std::vector<std::pair<std::size_t, mpq_class>>> cols(unknowns.size());
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
        for (const auto& t : f[unknowns[u].first].terms()) {
            Monomial m = unknowns[u].second * t.m;
            auto it = rowof.emplace(m, rowof.size()).first;
            cols[u].emplace_back(it->second, t.c);
        }
    }
    std::array<unsigned, 3> te{};
    te[i] = n;
    Monomial target = make_mono(vars, te);
    auto tt = rowof.emplace(target, rowof.size()).first;
    QMatrix a(rowof.size(), unknowns.size());
    for (std::size_t u = 0; u < unknowns.size(); ++u)
        for (const auto& [r, c] : cols[u]) a(r, u) += c;
    std::vector<mpq_class> b(rowof.size(), 0);
    b[tt->second] = 1;
    std::vector<std::size_t> order(unknowns.size());
    std::iota(order.begin(), order.end(), 0);
    if (reverse) std::reverse(order.begin(), order.end());
    auto x = solve(a, b, &order);
    if (!x) return std::nullopt;
    std::array<Poly, 3> row{Poly(vt), Poly(vt), Poly(vt)};
    std::array<std::vector<Term>, 3> terms;
    for (std::size_t u = 0; u < unknowns.size(); ++u)
        if ((*x)[u] != 0) terms[unknowns[u].first].push_back({unknowns[u].second, (*x)[u]});
    for (int j = 0; j < 3; ++j) row[j] = Poly::from_terms(vt, std::move(terms[j]));
    return row;
}

Poly det3(const std::array<std::array<Poly, 3>, 3>& h) {
    return h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
           h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
}

PolyMatrix8 derivative_matrix(const MatrixFactorization& mf, std::size_t v) {
    PolyMatrix8 d;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) d[i][j] = mf.m[i][j].derivative(v);
    return d;
}

}  // namespace

unsigned default_degree_cap(const Poly& potential, const std::array<std::size_t, 3>& vars) {
    unsigned mx = 0;
    for (auto v : vars) mx = std::max(mx, potential.degree_in(v));
    return 3 * mx + 3;
}

CofactorLift cofactor_lift(const std::array<Poly, 3>& f, const std::array<std::size_t, 3>& vars,
                           const std::array<mpq_class, 3>& weights, unsigned degree_cap, LiftVariant variant) {
    CofactorLift l;
    l.vars = vars;
    for (std::size_t i = 0; i < 3; ++i) {
        unsigned n = 1;
        std::optional<std::array<Poly, 3>> row;
        for (; n <= degree_cap; ++n)
            if ((row = lift_row(f, vars, weights, i, n, false))) break;
        if (!row)
            throw ResidueError("cofactor lift: no power of '" + f[0].vars()->name(vars[i]) + "' up to degree " +
                               std::to_string(degree_cap) + " lies in the ideal");
        if (variant == LiftVariant::Shifted) {
            ++n;
            row = lift_row(f, vars, weights, i, n, true);
            if (!row) throw ResidueError("cofactor lift: shifted row failed");
        }
        l.n[i] = n;
        l.h[i] = std::move(*row);
    }
    l.det = det3(l.h);
    if (!lift_holds(l, f)) throw ResidueError("cofactor lift: certificate does not multiply out");
    return l;
}

CofactorLift potential_lift(const Poly& potential, const std::array<std::size_t, 3>& vars, LiftVariant variant,
                            unsigned degree_cap) {
    std::vector<std::string> names;
    for (auto v : vars) names.push_back(potential.vars()->name(v));
    auto vw = weights_from_potential(potential, names);
    std::array<mpq_class, 3> w;
    std::array<Poly, 3> f;
    for (int i = 0; i < 3; ++i) {
        w[i] = vw.at(names[i]);
        f[i] = potential.derivative(vars[i]);
    }
    if (!degree_cap) degree_cap = default_degree_cap(potential, vars);
    return cofactor_lift(f, vars, w, degree_cap, variant);
}

bool lift_holds(const CofactorLift& l, const std::array<Poly, 3>& f) {
    const VarTablePtr& vt = f[0].vars();
    for (int i = 0; i < 3; ++i) {
        Poly s(vt);
        for (int j = 0; j < 3; ++j) s += l.h[i][j] * f[j];
        if (s != Poly::variable(vt, l.vars[i], l.n[i])) return false;
    }
    return true;
}

Poly grothendieck_residue(const Poly& g, const CofactorLift& lift) {
    const VarTablePtr& vt = g.vars();
    std::array<unsigned, 3> e{};
    for (int i = 0; i < 3; ++i) e[i] = lift.n[i] - 1;
    const Monomial key = make_mono(lift.vars, e);
    // only terms of g dividing the key can contribute
    std::vector<std::size_t> ring(lift.vars.begin(), lift.vars.end());
    Poly out(vt);
    for (auto& [m, c] : g.coefficients_wrt(ring)) {
        if (!mono_divides(m, key)) continue;
        const Monomial want = mono_div(key, m);
        for (const auto& t : lift.det.terms())
            if (t.m == want) out += c * t.c;
    }
    return out;
}

Poly supertrace(const PolyMatrix8& a) {
    Poly s(a[0][0].vars());
    for (int i = 0; i < 4; ++i) s += a[i][i];
    for (int i = 4; i < 8; ++i) s -= a[i][i];
    return s;
}

PolyMatrix8 derivative_matrix_product(const MatrixFactorization& mf, const std::vector<std::size_t>& order) {
    PolyMatrix8 p;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) p[i][j] = Poly::constant(mf.vars, i == j ? 1 : 0);
    for (auto v : order) p = multiply(p, derivative_matrix(mf, v));
    return p;
}

Poly supertrace_of_derivatives(const MatrixFactorization& mf, const std::vector<std::size_t>& order) {
    if (order.empty()) return supertrace(derivative_matrix_product(mf, order));
    PolyMatrix8 p = derivative_matrix_product(mf, std::vector<std::size_t>(order.begin(), order.end() - 1));
    PolyMatrix8 last = derivative_matrix(mf, order.back());
    Poly s(mf.vars);
    for (int i = 0; i < 8; ++i) {
        Poly d(mf.vars);
        for (int k = 0; k < 8; ++k)
            if (!p[i][k].is_zero() && !last[k][i].is_zero()) d += p[i][k] * last[k][i];
        if (i < 4) s += d;
        else s -= d;
    }
    return s;
}

std::string to_string(Side s) { return s == Side::Left ? "left" : "right"; }

namespace {

QdimResult finish(const QdimInput& in, Side side, const Poly& g, LiftVariant variant) {
    const bool left = side == Side::Left;
    const auto& vars = left ? in.out : in.in;
    const Poly& pot = left ? in.w_out : in.v_in;
    auto lift = potential_lift(pot, vars, variant);
    Poly r = grothendieck_residue(g, lift);
    // sign (-1)^binom(4,2) = +1
    std::vector<std::size_t> ring(in.in.begin(), in.in.end());
    ring.insert(ring.end(), in.out.begin(), in.out.end());
    if (!r.uses_only([&] {
            std::vector<std::size_t> keep;
            for (std::size_t i = 0; i < r.vars()->size(); ++i)
                if (std::find(ring.begin(), ring.end(), i) == ring.end()) keep.push_back(i);
            return keep;
        }()))
        throw ResidueError(to_string(side) + " quantum dimension depends on ring variables: " + format_poly(r));
    return {side, r.remap(in.params)};
}

}  // namespace

QdimResult qdim(const QdimInput& in, Side side, LiftVariant variant) {
    std::vector<std::size_t> order(in.in.begin(), in.in.end());
    order.insert(order.end(), in.out.begin(), in.out.end());
    return finish(in, side, supertrace_of_derivatives(*in.mf, order), variant);
}

std::array<QdimResult, 2> qdims(const QdimInput& in) {
    std::vector<std::size_t> order(in.in.begin(), in.in.end());
    order.insert(order.end(), in.out.begin(), in.out.end());
    Poly g = supertrace_of_derivatives(*in.mf, order);
    return {finish(in, Side::Left, g, LiftVariant::Minimal), finish(in, Side::Right, g, LiftVariant::Minimal)};
}

}  // namespace orbimf
