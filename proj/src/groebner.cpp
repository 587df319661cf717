#include "orbimf/groebner.hpp"

#include <algorithm>
#include <list>

namespace orbimf {

namespace {

// out = p - c * m * g, all term lists strictly descending.
void sub_scaled(const std::vector<Term>& p, const mpq_class& c, const Monomial& m, const std::vector<Term>& g,
                std::vector<Term>& out, std::size_t start = 0) {
    out.clear();
    out.reserve(p.size() - start + g.size());
    std::size_t i = start, j = 0;
    Monomial gm;
    mpq_class t;
    bool have = false;
    while (i < p.size() || j < g.size()) {
        if (j < g.size() && !have) {
            kernels().mul(g[j].m, m, gm);
            have = true;
        }
        int cmp = i >= p.size() ? -1 : (j >= g.size() ? 1 : mono_cmp(p[i].m, gm));
        if (cmp > 0) {
            out.push_back(p[i++]);
        } else if (cmp < 0) {
            t = g[j].c * c;
            out.push_back({gm, -t});
            ++j;
            have = false;
        } else {
            t = g[j].c * c;
            t = p[i].c - t;
            if (t != 0) out.push_back({gm, t});
            ++i;
            ++j;
            have = false;
        }
    }
}

struct Reducer {
    const std::vector<std::vector<Term>>& basis;
    const std::vector<bool>& active;

    // index of an active basis element whose leading monomial divides m
    std::ptrdiff_t find(const Monomial& m) const {
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (active[k] && mono_divides(basis[k][0].m, m)) return static_cast<std::ptrdiff_t>(k);
        return -1;
    }

    std::vector<Term> full(std::vector<Term> p) const {
        std::vector<Term> done, tmp;
        std::size_t pos = 0;
        while (pos < p.size()) {
            auto k = find(p[pos].m);
            if (k < 0) {
                done.push_back(std::move(p[pos++]));
                continue;
            }
            const auto& g = basis[static_cast<std::size_t>(k)];
            Monomial q = mono_div(p[pos].m, g[0].m);
            mpq_class c = p[pos].c / g[0].c;
            sub_scaled(p, c, q, g, tmp, pos);
            std::swap(p, tmp);
            pos = 0;
        }
        return done;
    }
};

std::vector<Term> make_monic(std::vector<Term> t) {
    if (t.empty() || t[0].c == 1) return t;
    mpq_class inv = 1 / t[0].c;
    for (auto& x : t) x.c *= inv;
    return t;
}

struct Pair {
    std::size_t i, j;
    Monomial lcm;
    uint32_t sugar;
};

}  // namespace

Poly normal_form(const Poly& p, const std::vector<Poly>& basis) {
    if (p.is_zero() || basis.empty()) return p;
    std::vector<std::vector<Term>> b;
    std::vector<bool> act;
    for (const auto& g : basis) {
        if (g.is_zero()) continue;
        if (g.vars() && p.vars() && !g.vars()->same_names(*p.vars()))
            throw PolyError("normal_form: variable table mismatch");
        b.push_back(g.terms());
        act.push_back(true);
    }
    Reducer r{b, act};
    return Poly::from_sorted(p.vars(), r.full(p.terms()));
}

bool is_unit_ideal(const std::vector<Poly>& basis) {
    for (const auto& g : basis)
        if (!g.is_zero() && g.is_constant()) return true;
    return false;
}

std::vector<Poly> groebner(const std::vector<Poly>& gens, const GroebnerOptions& opt, GroebnerStats* stats) {
    GroebnerStats local;
    GroebnerStats& st = stats ? *stats : local;
    VarTablePtr vt;
    for (const auto& g : gens)
        if (g.vars()) vt = g.vars();

    std::vector<std::vector<Term>> G;
    std::vector<uint32_t> sugar;
    std::vector<bool> active;
    std::list<Pair> pairs;

    auto add = [&](std::vector<Term> h, uint32_t s) {
        h = make_monic(std::move(h));
        const std::size_t hi = G.size();
        const Monomial lh = h[0].m;
        G.push_back(std::move(h));
        sugar.push_back(s);
        active.push_back(true);
        if (mono_degree(lh) == 0) return;
        // Gebauer-Moeller update
        struct Cand {
            std::size_t g;
            Monomial lcm;
            bool coprime;
        };
        std::vector<Cand> c, d;
        for (std::size_t g = 0; g < hi; ++g)
            if (active[g]) c.push_back({g, mono_lcm(lh, G[g][0].m), mono_coprime(lh, G[g][0].m)});
        for (std::size_t a = 0; a < c.size(); ++a) {
            bool keep = c[a].coprime;
            if (!keep) {
                keep = true;
                for (std::size_t b = a + 1; b < c.size() && keep; ++b)
                    if (mono_divides(c[b].lcm, c[a].lcm)) keep = false;
                for (std::size_t b = 0; b < d.size() && keep; ++b)
                    if (mono_divides(d[b].lcm, c[a].lcm)) keep = false;
            }
            if (keep) d.push_back(c[a]);
            else ++st.skipped;
        }
        for (auto it = pairs.begin(); it != pairs.end();) {
            const Monomial& l = it->lcm;
            if (mono_divides(lh, l) && mono_lcm(G[it->i][0].m, lh) != l && mono_lcm(G[it->j][0].m, lh) != l) {
                it = pairs.erase(it);
                ++st.skipped;
            } else {
                ++it;
            }
        }
        for (const auto& x : d) {
            if (x.coprime) {
                ++st.skipped;
                continue;
            }
            const uint32_t dl = mono_degree(x.lcm);
            const uint32_t s1 = sugar[x.g] - mono_degree(G[x.g][0].m) + dl;
            const uint32_t s2 = s - mono_degree(lh) + dl;
            pairs.push_back({x.g, hi, x.lcm, std::max(s1, s2)});
        }
        for (std::size_t g = 0; g < hi; ++g)
            if (active[g] && mono_divides(lh, G[g][0].m)) active[g] = false;
    };

    {
        std::vector<std::vector<Term>> init;
        for (const auto& g : gens)
            if (!g.is_zero()) init.push_back(g.terms());
        std::sort(init.begin(), init.end(),
                  [](const std::vector<Term>& a, const std::vector<Term>& b) { return mono_cmp(a[0].m, b[0].m) < 0; });
        for (auto& g : init) {
            Reducer r{G, active};
            auto h = r.full(std::move(g));
            if (h.empty()) continue;
            uint32_t s = 0;
            for (const auto& t : h) s = std::max(s, mono_degree(t.m));
            if (mono_degree(h[0].m) == 0) {
                return {Poly::constant(vt, 1)};
            }
            add(std::move(h), s);
        }
    }

    std::vector<Term> tmp1, tmp2;
    while (!pairs.empty()) {
        auto best = pairs.begin();
        for (auto it = std::next(pairs.begin()); it != pairs.end(); ++it) {
            if (it->sugar < best->sugar || (it->sugar == best->sugar && mono_cmp(it->lcm, best->lcm) < 0)) best = it;
        }
        Pair p = *best;
        pairs.erase(best);
        if (++st.spairs > opt.spair_cap)
            throw GroebnerBudgetExceeded("S-pair budget of " + std::to_string(opt.spair_cap) + " exceeded");
        const auto& gi = G[p.i];
        const auto& gj = G[p.j];
        // S = (lcm/lm_i) g_i - (lcm/lm_j) g_j ; both monic
        std::vector<Term> zero;
        sub_scaled(zero, mpq_class(-1), mono_div(p.lcm, gi[0].m), gi, tmp1);
        sub_scaled(tmp1, mpq_class(1), mono_div(p.lcm, gj[0].m), gj, tmp2);
        Reducer r{G, active};
        auto h = r.full(tmp2);
        if (h.empty()) {
            ++st.zero_reductions;
            continue;
        }
        if (mono_degree(h[0].m) == 0) return {Poly::constant(vt, 1)};
        add(std::move(h), p.sugar);
    }

    // reduced basis
    std::vector<std::vector<Term>> min;
    for (std::size_t k = 0; k < G.size(); ++k)
        if (active[k]) min.push_back(G[k]);
    std::vector<Poly> out;
    std::vector<bool> act(min.size(), true);
    for (std::size_t k = 0; k < min.size(); ++k) {
        act[k] = false;
        Reducer r{min, act};
        auto h = r.full(min[k]);
        act[k] = true;
        min[k] = make_monic(std::move(h));
    }
    for (auto& t : min) out.push_back(Poly::from_sorted(vt, std::move(t)));
    std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) { return mono_cmp(a.lead().m, b.lead().m) < 0; });
    return out;
}

IdealComparison ideal_compare_bases(const std::vector<Poly>& a, const std::vector<Poly>& gb_a,
                                    const std::vector<Poly>& b, const std::vector<Poly>& gb_b) {
    IdealComparison r;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!normal_form(a[i], gb_b).is_zero()) r.a_not_in_b.push_back(i);
    for (std::size_t i = 0; i < b.size(); ++i)
        if (!normal_form(b[i], gb_a).is_zero()) r.b_not_in_a.push_back(i);
    r.a_in_b = r.a_not_in_b.empty();
    r.b_in_a = r.b_not_in_a.empty();
    return r;
}

IdealComparison ideal_compare(const std::vector<Poly>& a, const std::vector<Poly>& b, const GroebnerOptions& opt) {
    return ideal_compare_bases(a, groebner(a, opt), b, groebner(b, opt));
}

}  // namespace orbimf
