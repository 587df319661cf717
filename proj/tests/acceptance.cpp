// Prints one [PASS]/[FAIL] line per acceptance criterion, details indented
// below it. Exit status is 0 only when every criterion passes.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "orbimf/catalog.hpp"
#include "orbimf/constraints.hpp"
#include "orbimf/numberfield.hpp"
#include "orbimf/residue.hpp"
#include "orbimf/resultant.hpp"

using namespace orbimf;

namespace {

const std::vector<std::string> kEquivalences = {"E14", "Q12", "U12v2v3", "U12v1v3", "W12", "W13", "Z13"};

struct Prepared {
    const EntryData* data = nullptr;
    Entry e;
    MatrixFactorization mf;
    Derivation der;
    std::vector<Poly> gb;
    std::array<QdimResult, 2> q;
    double seconds = 0;
};

class Criterion {
public:
    Criterion(int n, std::string title) : n_(n), title_(std::move(title)), t0_(std::chrono::steady_clock::now()) {}
    void check(bool ok, const std::string& what) {
        ok_ = ok_ && ok;
        lines_.push_back(std::string(ok ? "ok    " : "FAIL  ") + what);
    }
    void note(const std::string& what) { lines_.push_back("      " + what); }
    bool finish() {
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f s", s);
        std::cout << (ok_ ? "[PASS] " : "[FAIL] ") << n_ << ". " << title_ << " (" << buf << ")\n";
        for (const auto& l : lines_) std::cout << "    " << l << "\n";
        std::cout.flush();
        return ok_;
    }

private:
    int n_;
    std::string title_;
    std::chrono::steady_clock::time_point t0_;
    bool ok_ = true;
    std::vector<std::string> lines_;
};

std::array<std::size_t, 3> arr3(const std::vector<std::size_t>& v) { return {v.at(0), v.at(1), v.at(2)}; }

Prepared prepare(const Catalog& cat, const std::string& key) {
    const auto t0 = std::chrono::steady_clock::now();
    Prepared p;
    p.data = &cat.find(key);
    p.e = materialize(*p.data);
    p.mf = build_8x8(p.e.d);
    p.der = derive_constraints(p.e, p.mf);
    p.gb = groebner(p.der.constraints.gens);
    QdimInput in;
    in.mf = &p.mf;
    in.v_in = p.e.v_in;
    in.w_out = p.e.w_out;
    in.in = arr3(p.e.in_indices());
    in.out = arr3(p.e.out_indices());
    in.params = p.e.params;
    p.q = qdims(in);
    p.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return p;
}

const FamilySpec* family(const Prepared& p, const std::string& label) {
    for (const auto& f : p.data->families)
        if (f.label == label) return &f;
    return nullptr;
}

std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (auto i : v) s += (s.empty() ? "" : ", ") + std::to_string(i + 1);
    return s;
}

bool squaring(Criterion& c, const Prepared& p) {
    auto vp = verify_potential(p.mf, p.e.v_in, p.e.w_out, p.e.ring_indices(), p.e.params, p.gb);
    std::ostringstream os;
    os << p.data->id << ": epsilon " << vp.epsilon << ", off-diagonal exactly zero " << (vp.offdiag_zero ? "yes" : "no")
       << ", " << vp.residual.size() << " residual coefficients, " << vp.residual_not_in_ideal.size()
       << " outside the constraint ideal";
    char buf[48];
    std::snprintf(buf, sizeof buf, " (derivation and basis %.2f s)", p.seconds);
    os << buf;
    c.check(vp.ok(), os.str());
    return vp.ok();
}

void ideals(Criterion& c, const Prepared& p, bool two_way) {
    auto cmp = ideal_compare_bases(p.e.paper_constraints, groebner(p.e.paper_constraints), p.der.constraints.gens, p.gb);
    std::string what = p.data->id + ": printed equations in derived ideal";
    if (!cmp.a_in_b) what += " (not: equation " + join(cmp.a_not_in_b) + ")";
    c.check(cmp.a_in_b, what);
    if (two_way) {
        std::string w2 = p.data->id + ": derived ideal in printed ideal";
        if (!cmp.b_in_a) w2 += " (not: derived generator " + join(cmp.b_not_in_a) + ")";
        c.check(cmp.b_in_a, w2);
    }
}

void qdim_formulas(Criterion& c, const Prepared& p, bool unit_allowed) {
    const std::optional<Poly> printed[2] = {p.e.paper_ql, p.e.paper_qr};
    for (int s = 0; s < 2; ++s) {
        const std::string side = s == 0 ? "left" : "right";
        auto m = classify_qdim(printed[s], p.q[s].value, p.q[1 - s].value, p.gb);
        bool ok = m.kind == MatchKind::Exact || m.kind == MatchKind::ZeroNormalForm ||
                  (unit_allowed && m.kind == MatchKind::UnitMultiple);
        std::string what = p.data->id + " " + side + ": " + to_string(m.kind);
        if (m.kind == MatchKind::UnitMultiple || m.kind == MatchKind::SwappedUnitMultiple)
            what += ", ratio " + format_rational(m.ratio);
        c.check(ok, what);
        c.note("computed " + format_poly(normal_form(p.q[s].value, p.gb)) +
               (printed[s] ? ", printed " + format_poly(*printed[s]) : std::string()));
    }
}

}  // namespace

int main() {
    Catalog cat = Catalog::load(Catalog::default_dir());
    std::map<std::string, Prepared> prep;
    for (const auto& k : kEquivalences) prep.emplace(k, prepare(cat, k));
    bool all = true;

    {
        Criterion c(1, "squaring identity for all seven equivalences");
        for (const auto& k : kEquivalences) squaring(c, prep.at(k));
        all &= c.finish();
    }
    {
        Criterion c(2, "constraint ideals reproduce the printed equations");
        const std::set<std::string> two_way = {"E14", "W12", "Z13"};
        for (const auto& k : kEquivalences) ideals(c, prep.at(k), two_way.count(k) > 0);
        all &= c.finish();
    }
    {
        Criterion c(3, "quantum dimension formulas");
        for (const auto& k : kEquivalences) qdim_formulas(c, prep.at(k), k == "U12v1v3");
        all &= c.finish();
    }

    const std::vector<std::pair<std::string, std::string>> families = {
        {"E14", "family1"}, {"W12", "family1"}, {"W12", "family2"},   {"U12v2v3", "a2=0"}, {"U12v2v3", "b2=0"},
        {"U12v2v3", "a2=b2"}, {"U12v1v3", "zeta3"}, {"W13", "reduced"}, {"Z13", "t18"}};
    {
        Criterion c(4, "solution families lie on the constraint variety");
        for (const auto& [k, label] : families) {
            const auto& p = prep.at(k);
            const FamilySpec* f = family(p, label);
            if (!f) {
                c.check(false, p.data->id + " " + label + ": not in the catalog");
                continue;
            }
            auto r = verify_family(p.e, *f, p.der.constraints.gens);
            c.check(r.ok, p.data->id + " " + label + ": " + std::to_string(p.der.constraints.gens.size()) +
                              " constraints, " + std::to_string(r.nonzero.size()) + " nonzero after reduction");
        }
        all &= c.finish();
    }
    {
        Criterion c(5, "non-vanishing at family points and the printed exclusions");
        for (const auto& [k, label] : families) {
            const auto& p = prep.at(k);
            const FamilySpec* f = family(p, label);
            if (!f) {
                c.check(false, p.data->id + " " + label + ": not in the catalog");
                continue;
            }
            for (int s = 0; s < 2; ++s) {
                auto cert = nonvanishing_check(p.e, *f, p.q[s].value);
                std::string what = p.data->id + " " + label + (s == 0 ? " left: " : " right: ") + to_string(cert.status);
                what += cert.exact ? " (exact)" : " (" + std::to_string(cert.bits) + " bits)";
                c.check(cert.status == NonzeroCertificate::Status::Nonzero, what);
            }
        }
        for (const auto& k : {"E14", "W12"}) {
            const auto& p = prep.at(k);
            const FamilySpec* f = family(p, "exclusion");
            if (!f) {
                c.check(false, p.data->id + " exclusion: not in the catalog");
                continue;
            }
            auto cert = nonvanishing_check(p.e, *f, p.q[0].value);
            c.check(cert.status == NonzeroCertificate::Status::Zero,
                    p.data->id + " exclusion point (" + f->description + "): left " + to_string(cert.status) +
                        ", printed formula predicts zero");
        }
        all &= c.finish();
    }
    {
        Criterion c(6, "factorisation identities");
        auto vt = make_vars({"c"});
        c.check(parse_poly("(c^4 + 2*c^2 + 2)*(c^4 - 2*c^2 + 2)", vt) == parse_poly("c^8 + 4", vt),
                "c^8 + 4 = (c^4 + 2c^2 + 2)(c^4 - 2c^2 + 2)");
        QuotientSpec gi({{"i", "i^2 + 1"}}, true);
        c.check(gi.from_string("(1 + i)^4") == gi.from_string("-4"), "(1 + i)^4 = -4 in Q[i]/(i^2 + 1)");
        all &= c.finish();
    }
    {
        Criterion c(7, "grading");
        auto vt = make_vars({"x", "y", "z"});
        std::map<std::string, mpq_class> charge;
        std::size_t euler = 0;
        bool table_ok = true;
        for (const auto& [key, tp] : cat.potentials()) {
            Poly w = table_potential(tp, vt, {"x", "y", "z"});
            auto vw = weights_from_potential(w, {"x", "y", "z"});
            const bool ok = euler_check(w, vw) && check_weight_system(vw, tp.ws).ok &&
                            central_charge(vw) == make_rational(tp.ws.h + 2, tp.ws.h);
            if (!ok) c.check(false, key + ": Euler identity, weight system or central charge");
            euler += ok;
            table_ok = table_ok && ok;
            auto [it, fresh] = charge.emplace(tp.family, central_charge(vw));
            if (!fresh && it->second != central_charge(vw)) {
                table_ok = false;
                c.check(false, key + ": central charge differs within " + tp.family);
            }
        }
        c.check(table_ok, std::to_string(euler) + " of " + std::to_string(cat.potentials().size()) +
                              " table potentials pass the Euler identity with c = (h+2)/h");
        for (const auto& k : kEquivalences) {
            const auto& p = prep.at(k);
            auto vin = weights_from_potential(p.e.v_in, p.data->ring_in);
            auto wout = weights_from_potential(p.e.w_out, p.data->ring_out);
            VariableWeights combined = vin;
            combined.insert(wout.begin(), wout.end());
            auto rep = grading_check(p.e.d, combined, p.data->parameters);
            bool ok = rep.ok && central_charge(vin) == central_charge(wout);
            for (const auto& s : rep.pair_sums) ok = ok && s == 2;
            std::string what = p.data->id + ": central charge " + format_rational(central_charge(vin)) +
                               ", product degrees " + format_rational(rep.pair_sums[0]) + ", " +
                               format_rational(rep.pair_sums[1]) + ", " + format_rational(rep.pair_sums[2]);
            for (const auto& pr : rep.problems) what += "; " + pr;
            c.check(ok, what);
        }
        all &= c.finish();
    }
    {
        Criterion c(8, "residues do not depend on the cofactor lift");
        std::set<std::string> keys;
        for (const auto& k : kEquivalences) {
            keys.insert(prep.at(k).data->side_in.potential);
            keys.insert(prep.at(k).data->side_out.potential);
        }
        auto vt = make_vars({"x", "y", "z"});
        std::mt19937_64 rng(20240601);
        std::uniform_int_distribution<int> coef(-9, 9);
        std::uniform_int_distribution<unsigned> ex(0, 8);
        const std::array<std::size_t, 3> xyz{0, 1, 2};
        for (const auto& key : keys) {
            Poly w = table_potential(cat.potentials().at(key), vt, {"x", "y", "z"});
            auto a = potential_lift(w, xyz, LiftVariant::Minimal);
            auto b = potential_lift(w, xyz, LiftVariant::Shifted);
            int same = 0;
            for (int it = 0; it < 20; ++it) {
                std::vector<Term> t;
                for (int k = 0; k < 8; ++k) {
                    Monomial m;
                    for (int v = 0; v < 3; ++v) m.e[v] = static_cast<uint16_t>(ex(rng));
                    t.push_back({m, coef(rng)});
                }
                Poly g = Poly::from_terms(vt, std::move(t));
                same += grothendieck_residue(g, a) == grothendieck_residue(g, b);
            }
            std::ostringstream os;
            os << key << ": N = (" << a.n[0] << "," << a.n[1] << "," << a.n[2] << ") vs (" << b.n[0] << "," << b.n[1]
               << "," << b.n[2] << "), " << same << "/20 numerators agree";
            c.check(same == 20 && a.n != b.n, os.str());
        }
        all &= c.finish();
    }
    {
        Criterion c(9, "resultant oracle rediscovers the family relations");
        auto run = [&](const std::string& k, const std::map<std::string, std::string>& assign, const std::string& target,
                       const std::string& want, bool reciprocal_form) {
            const auto& p = prep.at(k);
            std::string what = p.data->id + ", " + target + ": ";
            try {
                auto r = bruteforce_family_oracle(p.der.constraints.gens, assign, target);
                auto tvt = make_vars({target});
                Poly goal = parse_poly(want, tvt);
                bool found = false;
                std::string cands;
                for (const auto& cand : r.candidates) {
                    Poly m = cand.minpoly;
                    if (reciprocal_form) m = from_upoly(reciprocal(to_upoly(m, 0)), tvt, 0).primitive();
                    cands += (cands.empty() ? "" : ", ") + format_poly(m) + (cand.certified ? " [certified]" : " [uncertified]");
                    found = found || m == goal;
                }
                c.check(found, what + "expected " + want + ", found " + cands);
            } catch (const std::exception& err) {
                c.check(false, what + err.what());
            }
        };
        run("E14", {}, "c", "c^8 + 4", false);
        run("W13", {{"b", "0"}, {"a2", "0"}, {"a3", "1"}, {"f", "-1"}, {"g", "0"}}, "d", "d^8 + 4", true);
        run("U12v2v3", {{"a2", "0"}}, "b1", "2*b1^3 - 1", false);
        run("U12v2v3", {{"b2", "0"}}, "a1", "2*a1^3 + 1", false);
        all &= c.finish();
    }
    std::cout << (all ? "all criteria pass" : "some criteria fail") << "\n";
    return all ? 0 : 1;
}
