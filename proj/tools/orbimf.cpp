#include <cstdlib>
#include <iostream>
#include <mutex>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "orbimf/catalog.hpp"
#include "orbimf/constraints.hpp"
#include "orbimf/monomial.hpp"
#include "orbimf/report.hpp"
#include "orbimf/residue.hpp"

using namespace orbimf;
using nlohmann::json;

namespace {

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int cmd_verify(const Catalog& cat, const std::string& entry, bool all, bool as_json, unsigned jobs,
               const VerifyOptions& opt) {
    std::vector<const EntryData*> todo;
    if (all) {
        for (const auto& e : cat.entries()) todo.push_back(&e);
    } else {
        if (entry.empty()) throw Usage("verify needs --entry or --all");
        todo.push_back(&cat.find(entry));
    }
    std::vector<json> reports(todo.size());
    std::vector<std::string> errors(todo.size());
    std::size_t next = 0;
    std::mutex mu;
    auto worker = [&] {
        for (;;) {
            std::size_t k;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (next >= todo.size()) return;
                k = next++;
            }
            try {
                reports[k] = verify_entry(*todo[k], cat, opt);
            } catch (const std::exception& err) {
                errors[k] = err.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::max(1u, jobs); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    bool pass = true;
    for (std::size_t k = 0; k < todo.size(); ++k) {
        if (!errors[k].empty()) {
            reports[k] = {{"schema", kReportSchema}, {"entry", todo[k]->id}, {"pass", false}, {"error", errors[k]}};
            pass = false;
        } else if (!reports[k]["pass"].get<bool>()) {
            pass = false;
        }
    }
    if (as_json) {
        json out = all ? json{{"schema", kReportSchema}, {"reports", reports}} : reports[0];
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& r : reports) {
            if (r.contains("error")) std::cout << "entry " << r["entry"].get<std::string>() << ": ERROR " << r["error"].get<std::string>() << "\n";
            else std::cout << render_text(r);
        }
        if (all) {
            std::vector<json> ok;
            for (const auto& r : reports)
                if (!r.contains("error")) ok.push_back(r);
            std::cout << "\n" << render_summary(ok);
        }
    }
    return pass ? 0 : 1;
}

const FamilySpec& find_family(const EntryData& d, const std::string& label) {
    for (const auto& f : d.families)
        if (f.label == label) return f;
    throw Usage("entry " + d.id + " has no family '" + label + "'");
}

int cmd_qdim(const Catalog& cat, const std::string& entry, const std::string& family, const std::string& side,
             bool as_json, long precision) {
    if (entry.empty()) throw Usage("qdim needs --entry");
    if (side != "left" && side != "right" && side != "both") throw Usage("--side must be left, right or both");
    const auto& d = cat.find(entry);
    Entry e = materialize(d);
    auto mf = build_8x8(e.d);
    QdimInput qi;
    qi.mf = &mf;
    qi.v_in = e.v_in;
    qi.w_out = e.w_out;
    auto in = e.in_indices(), out = e.out_indices();
    qi.in = {in[0], in[1], in[2]};
    qi.out = {out[0], out[1], out[2]};
    qi.params = e.params;
    auto q = qdims(qi);
    json res;
    res["entry"] = d.id;
    int rc = 0;
    for (int s = 0; s < 2; ++s) {
        const std::string name = s == 0 ? "left" : "right";
        if (side != "both" && side != name) continue;
        json x;
        x["value"] = format_poly(q[s].value);
        if (!family.empty()) {
            const auto& f = find_family(d, family);
            auto pt = family_point(e, f, true);
            auto v = evaluate_at(q[s].value, pt);
            x["family"] = f.label;
            x["field_element"] = v.str();
            auto cert = certify_nonzero(v, f.roots, precision);
            x["certificate"] = to_string(cert.status);
            x["exact"] = cert.exact;
            if (!cert.exact && cert.status != NonzeroCertificate::Status::Zero) x["enclosure"] = cert.enclosure;
            if (cert.status != NonzeroCertificate::Status::Nonzero) rc = 1;
        }
        res[name] = x;
    }
    if (as_json) {
        std::cout << res.dump(2) << "\n";
    } else {
        for (const char* name : {"left", "right"}) {
            if (!res.contains(name)) continue;
            const auto& x = res[name];
            if (x.contains("family")) {
                std::cout << name << ": " << x["field_element"].get<std::string>() << "  [" << x["certificate"].get<std::string>()
                          << (x["exact"].get<bool>() ? ", exact" : "") << "]";
                if (x.contains("enclosure")) std::cout << " " << x["enclosure"].get<std::string>();
                std::cout << "\n";
            } else {
                std::cout << name << ": " << x["value"].get<std::string>() << "\n";
            }
        }
    }
    return rc;
}

int cmd_constraints(const Catalog& cat, const std::string& entry, bool compare, bool emit, bool as_json,
                    std::size_t cap) {
    if (entry.empty()) throw Usage("constraints needs --entry");
    const auto& d = cat.find(entry);
    Entry e = materialize(d);
    auto mf = build_8x8(e.d);
    auto der = derive_constraints(e, mf);
    json res;
    res["entry"] = d.id;
    res["epsilon"] = der.epsilon;
    std::vector<std::string> gens;
    for (const auto& g : der.constraints.gens) gens.push_back(format_poly(g));
    res["derived"] = gens;
    int rc = 0;
    if (compare) {
        GroebnerOptions o;
        o.spair_cap = cap;
        auto gd = groebner(der.constraints.gens, o);
        auto gp = groebner(e.paper_constraints, o);
        auto c = ideal_compare_bases(e.paper_constraints, gp, der.constraints.gens, gd);
        res["paper_in_derived"] = c.a_in_b;
        res["derived_in_paper"] = c.b_in_a;
        res["paper_not_in_derived"] = c.a_not_in_b;
        res["derived_not_in_paper"] = c.b_not_in_a;
        if (!c.equal()) rc = 1;
    }
    if (as_json) {
        std::cout << res.dump(2) << "\n";
        return rc;
    }
    if (emit || !compare) {
        if (gens.empty()) std::cout << "(no constraints)\n";
        for (const auto& g : gens) std::cout << g << "\n";
    }
    if (compare) {
        std::cout << "printed in derived: " << (res["paper_in_derived"].get<bool>() ? "yes" : "no") << "\n";
        std::cout << "derived in printed: " << (res["derived_in_paper"].get<bool>() ? "yes" : "no") << "\n";
        for (const auto& i : res["paper_not_in_derived"])
            std::cout << "  printed equation " << i.get<int>() + 1 << ": " << format_poly(e.paper_constraints[i.get<std::size_t>()])
                      << " is not in the derived ideal\n";
        for (const auto& i : res["derived_not_in_paper"])
            std::cout << "  derived equation " << i.get<int>() + 1 << ": " << gens[i.get<std::size_t>()]
                      << " is not in the printed ideal\n";
    }
    return rc;
}

int cmd_validate(const Catalog& cat) {
    bool ok = true;
    for (const auto& d : cat.entries()) {
        auto v = validate(d, cat.potentials());
        std::cout << d.id << ": " << (v.ok ? "ok" : "FAIL") << "\n";
        for (const auto& p : v.problems) std::cout << "  " << p << "\n";
        ok = ok && v.ok;
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orbimf: orbifold equivalence verification for exceptional unimodal singularities"};
    app.require_subcommand(1);
    std::string catalog, entry, family, side = "both", kernels = "auto";
    bool all = false, as_json = false, compare = false, emit = false;
    unsigned jobs = 1, seed = 0;
    long precision = 128;
    std::size_t cap = 50000;
    app.add_option("--catalog", catalog, "catalog directory (default: $ORBIMF_CATALOG or the built-in catalog)");
    app.add_option("--kernels", kernels, "monomial kernels: auto, scalar or avx2");
    auto* verify = app.add_subcommand("verify", "run every check on catalog entries");
    verify->add_option("--entry", entry, "entry id, alias or unique prefix");
    verify->add_flag("--all", all, "verify every entry");
    verify->add_flag("--json", as_json, "machine-readable report");
    verify->add_option("--jobs", jobs, "parallel entries");
    verify->add_option("--seed", seed, "recorded seed (no randomized steps)");
    verify->add_option("--precision", precision, "starting bits for interval certificates");
    verify->add_option("--spair-cap", cap, "S-pair budget per Groebner run");
    auto* qdim = app.add_subcommand("qdim", "left/right quantum dimensions");
    qdim->add_option("--entry", entry, "entry id, alias or unique prefix");
    qdim->add_option("--family", family, "evaluate at a family point");
    qdim->add_option("--side", side, "left, right or both");
    qdim->add_flag("--json", as_json, "machine-readable output");
    qdim->add_option("--precision", precision, "starting bits for interval certificates");
    auto* cons = app.add_subcommand("constraints", "derived parameter constraints");
    cons->add_option("--entry", entry, "entry id, alias or unique prefix");
    cons->add_flag("--compare-paper", compare, "two-way ideal comparison with the printed system");
    cons->add_flag("--emit", emit, "print the derived generators");
    cons->add_flag("--json", as_json, "machine-readable output");
    cons->add_option("--spair-cap", cap, "S-pair budget per Groebner run");
    auto* val = app.add_subcommand("validate", "schema and consistency checks of the catalog");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        if (!select_kernels(kernels)) throw Usage("unknown or unsupported kernels '" + kernels + "'");
        Catalog cat = Catalog::load(catalog.empty() ? Catalog::default_dir() : catalog);
        VerifyOptions opt;
        opt.spair_cap = cap;
        opt.precision = precision;
        opt.seed = seed;
        if (*verify) return cmd_verify(cat, entry, all, as_json, jobs, opt);
        if (*qdim) return cmd_qdim(cat, entry, family, side, as_json, precision);
        if (*cons) return cmd_constraints(cat, entry, compare, emit, as_json, cap);
        if (*val) return cmd_validate(cat);
    } catch (const Usage& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CatalogError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
