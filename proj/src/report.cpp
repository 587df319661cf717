#include "orbimf/report.hpp"

#include <chrono>
#include <sstream>

#include "orbimf/constraints.hpp"
#include "orbimf/grading.hpp"
#include "orbimf/matfac.hpp"
#include "orbimf/residue.hpp"

namespace orbimf {

using nlohmann::json;

namespace {

std::vector<std::string> strs(const std::vector<Poly>& ps) {
    std::vector<std::string> out;
    for (const auto& p : ps) out.push_back(format_poly(p));
    return out;
}

std::array<std::size_t, 3> arr3(const std::vector<std::size_t>& v) { return {v.at(0), v.at(1), v.at(2)}; }

json grading_stage(const Entry& e, const Catalog& cat) {
    json g;
    std::vector<std::string> problems;
    VariableWeights combined;
    std::vector<mpq_class> charges;
    const std::pair<const Poly*, const std::vector<std::string>*> sides[2] = {{&e.v_in, &e.data.ring_in},
                                                                             {&e.w_out, &e.data.ring_out}};
    const SideSpec* specs[2] = {&e.data.side_in, &e.data.side_out};
    for (int s = 0; s < 2; ++s) {
        try {
            auto vw = weights_from_potential(*sides[s].first, *sides[s].second);
            if (!euler_check(*sides[s].first, vw)) problems.push_back("Euler identity fails on " + specs[s]->potential);
            auto it = cat.potentials().find(specs[s]->potential);
            if (it != cat.potentials().end()) {
                auto wc = check_weight_system(vw, it->second.ws);
                if (!wc.ok) problems.push_back(specs[s]->potential + ": " + wc.message);
                const auto& ws = it->second.ws;
                if (central_charge(vw) != make_rational(ws.h + 2, ws.h))
                    problems.push_back(specs[s]->potential + ": central charge differs from (h+2)/h");
            }
            charges.push_back(central_charge(vw));
            for (auto& [k, v] : vw) combined[k] = v;
        } catch (const std::exception& err) {
            problems.push_back(err.what());
        }
    }
    if (charges.size() == 2) {
        g["central_charge"] = {format_rational(charges[0]), format_rational(charges[1])};
        if (charges[0] != charges[1]) problems.push_back("central charges differ");
    }
    if (problems.empty()) {
        auto rep = grading_check(e.d, combined, e.data.parameters);
        json deg = json::object();
        for (int k = 0; k < 6; ++k)
            if (rep.degrees[k]) deg[kEntryNames[k]] = format_rational(*rep.degrees[k]);
        g["degrees"] = deg;
        g["pair_sums"] = {format_rational(rep.pair_sums[0]), format_rational(rep.pair_sums[1]),
                          format_rational(rep.pair_sums[2])};
        for (const auto& p : rep.problems) problems.push_back(p);
        for (const auto& s : rep.pair_sums)
            if (rep.ok && s != 2) problems.push_back("product degree is not 2");
    }
    g["problems"] = problems;
    g["ok"] = problems.empty();
    return g;
}

}  // namespace

json verify_entry(const EntryData& data, const Catalog& cat, const VerifyOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    json r;
    r["schema"] = kReportSchema;
    r["entry"] = data.id;
    r["seed"] = opt.seed;
    json corr = json::array();
    for (const auto& c : data.corrections)
        corr.push_back({{"location", c.location}, {"printed", c.printed}, {"corrected", c.corrected}});
    r["corrections"] = corr;
    std::string first_failure;
    auto stage = [&](const std::string& name, bool ok) {
        if (!ok && first_failure.empty()) first_failure = name;
    };

    Entry e = materialize(data);
    GroebnerOptions gopt;
    gopt.spair_cap = opt.spair_cap;

    json grading = grading_stage(e, cat);
    stage("grading", grading["ok"]);
    r["grading"] = grading;

    auto mf = build_8x8(e.d);
    auto der = derive_constraints(e, mf);
    const auto& derived = der.constraints.gens;
    json sq;
    sq["epsilon"] = der.epsilon;
    sq["offdiagonal_zero"] = der.offdiag_zero;
    sq["diagonal_scalar"] = der.diagonal_constant;
    sq["nonzero_cells"] = mf.nonzero_cells();

    json cons;
    cons["derived"] = strs(derived);
    std::vector<Poly> gb_derived, gb_paper;
    bool have_gb = true;
    try {
        gb_derived = groebner(derived, gopt);
        gb_paper = groebner(e.paper_constraints, gopt);
    } catch (const GroebnerBudgetExceeded& err) {
        have_gb = false;
        cons["error"] = err.what();
    }
    // squaring holds modulo the derived ideal by construction; modulo the printed one it is a claim
    bool sq_ok = der.offdiag_zero && der.diagonal_constant;
    if (have_gb) {
        auto vp = verify_potential(mf, e.v_in, e.w_out, e.ring_indices(), e.params, gb_derived);
        sq_ok = sq_ok && vp.ok() && vp.epsilon == der.epsilon;
        auto vpp = verify_potential(mf, e.v_in, e.w_out, e.ring_indices(), e.params, gb_paper);
        sq["holds_modulo_paper_ideal"] = vpp.ok() && vpp.epsilon == der.epsilon;
    }
    sq["ok"] = sq_ok;
    stage("squaring", sq_ok);
    r["squaring"] = sq;

    if (have_gb) {
        auto cmp = ideal_compare_bases(e.paper_constraints, gb_paper, derived, gb_derived);
        cons["paper"] = strs(e.paper_constraints);
        cons["paper_in_derived"] = cmp.a_in_b;
        cons["derived_in_paper"] = cmp.b_in_a;
        cons["paper_not_in_derived"] = cmp.a_not_in_b;
        cons["derived_not_in_paper"] = cmp.b_not_in_a;
        cons["paper_is_unit_ideal"] = is_unit_ideal(gb_paper);
        cons["derived_basis"] = strs(gb_derived);
        if (!e.paper_simplified.empty()) {
            auto gb_s = groebner(e.paper_simplified, gopt);
            auto c2 = ideal_compare_bases(e.paper_simplified, gb_s, derived, gb_derived);
            cons["simplified_in_derived"] = c2.a_in_b;
            cons["derived_in_simplified"] = c2.b_in_a;
        }
        if (!cmp.b_in_a) {
            // try removing one parameter that the derived system determines linearly
            for (const auto& p : data.parameters) {
                auto el = eliminate_linear(derived, p);
                if (!el) continue;
                auto gb_el = groebner(*el, gopt);
                auto c3 = ideal_compare_bases(e.paper_constraints, gb_paper, *el, gb_el);
                if (c3.equal()) {
                    cons["equal_after_eliminating"] = p;
                    break;
                }
            }
        }
        cons["ok"] = cmp.equal();
    } else {
        cons["ok"] = false;
    }
    stage("constraints", cons["ok"]);
    r["constraints"] = cons;

    // quantum dimensions
    json qd;
    QdimInput qi;
    qi.mf = &mf;
    qi.v_in = e.v_in;
    qi.w_out = e.w_out;
    qi.in = arr3(e.in_indices());
    qi.out = arr3(e.out_indices());
    qi.params = e.params;
    auto q = qdims(qi);
    const std::optional<Poly> printed[2] = {e.paper_ql, e.paper_qr};
    bool q_ok = true;
    for (int s = 0; s < 2; ++s) {
        json side;
        side["computed"] = format_poly(q[s].value);
        if (have_gb) side["normal_form"] = format_poly(normal_form(q[s].value, gb_derived));
        if (printed[s]) {
            side["printed"] = format_poly(*printed[s]);
            if (have_gb) {
                auto m = classify_qdim(printed[s], q[s].value, q[1 - s].value, gb_derived);
                side["match"] = to_string(m.kind);
                if (m.kind == MatchKind::UnitMultiple || m.kind == MatchKind::SwappedUnitMultiple)
                    side["ratio"] = format_rational(m.ratio);
                if (m.kind != MatchKind::Exact && m.kind != MatchKind::ZeroNormalForm) q_ok = false;
            } else {
                q_ok = false;
            }
        }
        qd[s == 0 ? "left" : "right"] = side;
    }
    if (have_gb) {
        Poly prod = normal_form(q[0].value * q[1].value, gb_derived);
        qd["product_normal_form"] = format_poly(prod);
    }
    qd["ok"] = q_ok;
    stage("qdims", q_ok);
    r["qdims"] = qd;

    json fams = json::array();
    bool f_ok = true;
    for (const auto& f : data.families) {
        json fj;
        fj["label"] = f.label;
        fj["role"] = f.role;
        auto vr = verify_family(e, f, derived);
        fj["constraints_vanish"] = vr.ok;
        if (!vr.ok) fj["nonvanishing_constraints"] = vr.residues;
        bool ok = vr.ok;
        for (int s = 0; s < 2; ++s) {
            const std::string side = s == 0 ? "left" : "right";
            auto cert = nonvanishing_check(e, f, q[s].value, static_cast<mpfr_prec_t>(opt.precision));
            json cj;
            cj["status"] = to_string(cert.status);
            cj["exact"] = cert.exact;
            if (!cert.exact && cert.status != NonzeroCertificate::Status::Zero) {
                cj["bits"] = cert.bits;
                cj["enclosure"] = cert.enclosure;
            }
            auto ex = f.expect.find(side);
            if (ex != f.expect.end()) {
                cj["expected"] = ex->second;
                const bool want_zero = ex->second == "zero";
                const bool match = want_zero ? cert.status == NonzeroCertificate::Status::Zero
                                             : cert.status == NonzeroCertificate::Status::Nonzero;
                cj["as_expected"] = match;
                ok = ok && match;
            }
            fj[side] = cj;
        }
        fj["ok"] = ok;
        f_ok = f_ok && ok;
        fams.push_back(fj);
    }
    r["families"] = fams;
    stage("families", f_ok);

    r["pass"] = first_failure.empty();
    if (!first_failure.empty()) r["first_failure"] = first_failure;
    r["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

namespace {

std::string yn(const json& j) { return j.is_boolean() ? (j.get<bool>() ? "yes" : "no") : j.dump(); }

void list(std::ostringstream& os, const std::string& indent, const json& arr) {
    for (const auto& x : arr) os << indent << (x.is_string() ? x.get<std::string>() : x.dump()) << "\n";
}

}  // namespace

std::string render_text(const json& r) {
    std::ostringstream os;
    os << "entry " << r["entry"].get<std::string>() << ": " << (r["pass"].get<bool>() ? "PASS" : "FAIL");
    if (r.contains("first_failure")) os << " (first failing stage: " << r["first_failure"].get<std::string>() << ")";
    os << "\n";
    if (!r["corrections"].empty()) {
        os << "  corrections applied:\n";
        for (const auto& c : r["corrections"])
            os << "    " << c["location"].get<std::string>() << ": '" << c["printed"].get<std::string>() << "' -> '"
               << c["corrected"].get<std::string>() << "'\n";
    }
    const auto& g = r["grading"];
    os << "  grading: " << (g["ok"].get<bool>() ? "ok" : "FAIL");
    if (g.contains("central_charge")) os << ", central charge " << g["central_charge"][0].get<std::string>();
    os << "\n";
    if (g.contains("degrees"))
        for (const auto& [k, v] : g["degrees"].items()) os << "    deg " << k << " = " << v.get<std::string>() << "\n";
    list(os, "    problem: ", g["problems"]);
    const auto& s = r["squaring"];
    os << "  squaring: " << (s["ok"].get<bool>() ? "ok" : "FAIL") << ", epsilon " << s["epsilon"].get<int>()
       << ", off-diagonal zero " << yn(s["offdiagonal_zero"]) << ", nonzero cells " << s["nonzero_cells"].get<int>();
    if (s.contains("holds_modulo_paper_ideal")) os << ", holds modulo printed ideal " << yn(s["holds_modulo_paper_ideal"]);
    os << "\n";
    const auto& c = r["constraints"];
    os << "  constraints: " << (c["ok"].get<bool>() ? "ok" : "FAIL") << "\n";
    if (c["derived"].empty()) os << "    (no constraints)\n";
    list(os, "    derived: ", c["derived"]);
    if (c.contains("error")) os << "    error: " << c["error"].get<std::string>() << "\n";
    if (c.contains("paper_in_derived")) {
        os << "    printed in derived: " << yn(c["paper_in_derived"]) << ", derived in printed: " << yn(c["derived_in_paper"])
           << ", printed is unit ideal: " << yn(c["paper_is_unit_ideal"]) << "\n";
        for (const auto& i : c["paper_not_in_derived"])
            os << "    printed equation " << i.get<int>() + 1 << " is not in the derived ideal\n";
        for (const auto& i : c["derived_not_in_paper"])
            os << "    derived equation " << i.get<int>() + 1 << " is not in the printed ideal\n";
    }
    if (c.contains("simplified_in_derived"))
        os << "    simplified in derived: " << yn(c["simplified_in_derived"])
           << ", derived in simplified: " << yn(c["derived_in_simplified"]) << "\n";
    if (c.contains("equal_after_eliminating"))
        os << "    equal to printed after eliminating " << c["equal_after_eliminating"].get<std::string>() << "\n";
    const auto& q = r["qdims"];
    os << "  qdims: " << (q["ok"].get<bool>() ? "ok" : "FAIL") << "\n";
    for (const char* side : {"left", "right"}) {
        const auto& x = q[side];
        os << "    " << side << " computed " << x["computed"].get<std::string>();
        if (x.contains("normal_form")) os << ", normal form " << x["normal_form"].get<std::string>();
        os << "\n";
        if (x.contains("printed")) {
            os << "    " << side << " printed  " << x["printed"].get<std::string>() << " -> "
               << x.value("match", std::string("unchecked"));
            if (x.contains("ratio")) os << " (ratio " << x["ratio"].get<std::string>() << ")";
            os << "\n";
        }
    }
    if (q.contains("product_normal_form"))
        os << "    left*right normal form " << q["product_normal_form"].get<std::string>() << "\n";
    for (const auto& f : r["families"]) {
        os << "  family " << f["label"].get<std::string>() << " (" << f["role"].get<std::string>()
           << "): " << (f["ok"].get<bool>() ? "ok" : "FAIL") << ", constraints vanish " << yn(f["constraints_vanish"]) << "\n";
        if (f.contains("nonvanishing_constraints")) list(os, "    residue: ", f["nonvanishing_constraints"]);
        for (const char* side : {"left", "right"}) {
            const auto& x = f[side];
            os << "    " << side << " qdim " << x["status"].get<std::string>() << (x["exact"].get<bool>() ? " (exact)" : "");
            if (x.contains("bits")) os << " at " << x["bits"].get<long>() << " bits";
            if (x.contains("expected")) os << ", expected " << x["expected"].get<std::string>();
            os << "\n";
            if (x.contains("enclosure")) os << "      enclosure " << x["enclosure"].get<std::string>() << "\n";
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", r["seconds"].get<double>());
    os << "  time: " << buf << " s\n";
    return os.str();
}

std::string render_summary(const std::vector<json>& reports) {
    std::ostringstream os;
    os << "entry                 grading squaring constraints qdims families result\n";
    auto mark = [](const json& j) { return j.get<bool>() ? "ok" : "FAIL"; };
    for (const auto& r : reports) {
        bool fam = true;
        for (const auto& f : r["families"]) fam = fam && f["ok"].get<bool>();
        char line[256];
        std::snprintf(line, sizeof line, "%-21s %-7s %-8s %-11s %-5s %-8s %s\n", r["entry"].get<std::string>().c_str(),
                      mark(r["grading"]["ok"]), mark(r["squaring"]["ok"]), mark(r["constraints"]["ok"]),
                      mark(r["qdims"]["ok"]), fam ? "ok" : "FAIL", r["pass"].get<bool>() ? "PASS" : "FAIL");
        os << line;
    }
    return os.str();
}

}  // namespace orbimf
