#include "orbimf/matfac.hpp"

#include "orbimf/catalog.hpp"
#include "orbimf/linalg.hpp"

namespace orbimf {

std::size_t MatrixFactorization::nonzero_cells() const {
    std::size_t n = 0;
    for (const auto& row : m)
        for (const auto& p : row)
            if (!p.is_zero()) ++n;
    return n;
}

MatrixFactorization build_8x8(const std::array<Poly, 6>& six) {
    VarTablePtr vt = six[0].vars();
    for (const auto& p : six) {
        if (!p.vars() || !vt || !p.vars()->same_names(*vt)) throw PolyError("build_8x8: entries must share one variable table");
    }
    const Poly &d15 = six[0], &d16 = six[1], &d17 = six[2], &d25 = six[3], &d26 = six[4], &d35 = six[5];
    const Poly z(vt);
    MatrixFactorization mf;
    mf.vars = vt;
    for (auto& row : mf.m) row.fill(z);
    const Poly a[4][4] = {{d15, d16, d17, z}, {d25, d26, z, d17}, {d35, z, d26, -d16}, {z, d35, -d25, d15}};
    const Poly b[4][4] = {{d26, -d16, -d17, z}, {-d25, d15, z, -d17}, {-d35, z, d15, d16}, {z, -d35, d25, d26}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            mf.m[i][4 + j] = a[i][j];
            mf.m[4 + i][j] = b[i][j];
        }
    return mf;
}

PolyMatrix8 multiply(const PolyMatrix8& a, const PolyMatrix8& b) {
    VarTablePtr vt = a[0][0].vars();
    PolyMatrix8 out;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            Poly s(vt);
            for (int k = 0; k < 8; ++k)
                if (!a[i][k].is_zero() && !b[k][j].is_zero()) s += a[i][k] * b[k][j];
            out[i][j] = std::move(s);
        }
    return out;
}

PolyMatrix8 square(const MatrixFactorization& mf) { return multiply(mf.m, mf.m); }

Poly template_scalar(const std::array<Poly, 6>& six) {
    return six[0] * six[4] - six[1] * six[3] - six[2] * six[5];
}

bool offdiagonal_zero(const PolyMatrix8& s) {
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            if (i != j && !s[i][j].is_zero()) return false;
    return true;
}

std::vector<std::pair<Monomial, Poly>> residual_coefficients(const Poly& s, const Poly& delta, int eps,
                                                             const std::vector<std::size_t>& ring,
                                                             const VarTablePtr& params) {
    Poly r = s - delta * mpq_class(eps);
    std::vector<std::pair<Monomial, Poly>> out;
    for (auto& [m, c] : r.coefficients_wrt(ring)) out.emplace_back(m, c.remap(params));
    return out;
}

PotentialCheck verify_potential(const MatrixFactorization& mf, const Poly& v_in, const Poly& w_out,
                                const std::vector<std::size_t>& ring, const VarTablePtr& params,
                                const std::vector<Poly>& ideal_basis) {
    PotentialCheck r;
    auto sq = square(mf);
    r.offdiag_zero = offdiagonal_zero(sq);
    r.scalar = sq[0][0];
    r.diagonal_constant = true;
    for (int i = 1; i < 8; ++i)
        if (sq[i][i] != r.scalar) r.diagonal_constant = false;
    const Poly delta = w_out - v_in;
    // the sign whose residual has fewer coefficients outside the ideal wins; ties favour +1
    std::size_t best = SIZE_MAX;
    for (int eps : {1, -1}) {
        auto res = residual_coefficients(r.scalar, delta, eps, ring, params);
        std::vector<std::size_t> bad;
        for (std::size_t k = 0; k < res.size(); ++k)
            if (!normal_form(res[k].second, ideal_basis).is_zero()) bad.push_back(k);
        if (bad.size() < best) {
            best = bad.size();
            r.epsilon = eps;
            r.residual = std::move(res);
            r.residual_not_in_ideal = std::move(bad);
        }
    }
    return r;
}

GradingReport grading_check(const std::array<Poly, 6>& six, const VariableWeights& combined,
                            const std::vector<std::string>& parameters) {
    GradingReport rep;
    const VarTablePtr& vt = six[0].vars();
    const std::size_t np = parameters.size();
    std::vector<std::ptrdiff_t> pcol(vt->size(), -1);
    std::vector<mpq_class> wt(vt->size());
    std::vector<bool> known(vt->size(), false);
    for (std::size_t k = 0; k < np; ++k)
        if (auto i = vt->index(parameters[k])) pcol[*i] = static_cast<std::ptrdiff_t>(k);
    for (const auto& [v, w] : combined)
        if (auto i = vt->index(v)) {
            wt[*i] = w;
            known[*i] = true;
        }
    // unknowns: parameter degrees, then one degree per entry
    std::vector<std::vector<mpq_class>> rows;
    std::vector<mpq_class> rhs;
    const std::size_t ncols = np + 6;
    auto term_row = [&](const Term& t, std::size_t entry, std::vector<mpq_class>& row, mpq_class& b) {
        row.assign(ncols, 0);
        b = 0;
        for (std::size_t i = 0; i < vt->size(); ++i) {
            if (!t.m.e[i]) continue;
            if (pcol[i] >= 0) row[static_cast<std::size_t>(pcol[i])] += t.m.e[i];
            else if (known[i]) b -= wt[i] * t.m.e[i];
            else throw GradingError("no weight for variable '" + vt->name(i) + "'");
        }
        row[np + entry] = -1;
    };
    for (std::size_t e = 0; e < 6; ++e) {
        if (six[e].is_zero()) continue;
        // each entry alone must admit a consistent degree assignment
        std::vector<std::vector<mpq_class>> erows;
        std::vector<mpq_class> erhs;
        for (const auto& t : six[e].terms()) {
            std::vector<mpq_class> row;
            mpq_class b;
            term_row(t, e, row, b);
            erows.push_back(row);
            erhs.push_back(b);
        }
        QMatrix a(erows.size(), ncols);
        for (std::size_t r = 0; r < erows.size(); ++r)
            for (std::size_t c = 0; c < ncols; ++c) a(r, c) = erows[r][c];
        if (!solve(a, erhs))
            rep.problems.push_back(std::string("inhomogeneous entry ") + kEntryNames[e] + ": " + format_poly(six[e]));
        rows.insert(rows.end(), erows.begin(), erows.end());
        rhs.insert(rhs.end(), erhs.begin(), erhs.end());
    }
    const int pairs[3][2] = {{0, 4}, {1, 3}, {2, 5}};
    for (const auto& pr : pairs) {
        if (six[pr[0]].is_zero() || six[pr[1]].is_zero()) continue;
        std::vector<mpq_class> row(ncols, 0);
        row[np + pr[0]] = 1;
        row[np + pr[1]] = 1;
        rows.push_back(row);
        rhs.push_back(2);
    }
    QMatrix a(rows.size(), ncols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < ncols; ++c) a(r, c) = rows[r][c];
    auto x = rows.empty() ? std::optional<std::vector<mpq_class>>(std::vector<mpq_class>(ncols, 0)) : solve(a, rhs);
    if (!x) {
        if (rep.problems.empty()) rep.problems.push_back("parameter-degree inconsistency: no assignment gives product degrees 2");
        return rep;
    }
    for (std::size_t k = 0; k < np; ++k) rep.parameter_degrees[parameters[k]] = (*x)[k];
    for (std::size_t e = 0; e < 6; ++e)
        if (!six[e].is_zero()) rep.degrees[e] = (*x)[np + e];
    for (int p = 0; p < 3; ++p) {
        const auto& d0 = rep.degrees[pairs[p][0]];
        const auto& d1 = rep.degrees[pairs[p][1]];
        if (d0 && d1) rep.pair_sums[p] = *d0 + *d1;
    }
    rep.ok = rep.problems.empty();
    return rep;
}

}  // namespace orbimf
