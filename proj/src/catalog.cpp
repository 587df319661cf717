#include "orbimf/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace orbimf {

using nlohmann::json;

namespace {

std::vector<std::string> concat(std::initializer_list<const std::vector<std::string>*> parts) {
    std::vector<std::string> out;
    for (auto* p : parts) out.insert(out.end(), p->begin(), p->end());
    return out;
}

std::size_t entry_slot(const std::string& name) {
    for (std::size_t i = 0; i < kEntryNames.size(); ++i)
        if (name == kEntryNames[i]) return i;
    throw CatalogError("unknown matrix entry '" + name + "'");
}

}  // namespace

std::vector<std::string> identifiers(const std::string& text) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < text.size();) {
        if (std::isalpha(static_cast<unsigned char>(text[i]))) {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
            std::string id = text.substr(i, j - i);
            if (seen.insert(id).second) out.push_back(id);
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(text[i]))) {
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        } else {
            ++i;
        }
    }
    return out;
}

const std::string& location_text(const EntryData& data, const std::string& location) {
    if (location.rfind("entries.", 0) == 0) return data.entries[entry_slot(location.substr(8))];
    if (location.rfind("defs.", 0) == 0) {
        auto it = data.defs.find(location.substr(5));
        if (it == data.defs.end()) throw CatalogError("unknown definition in location '" + location + "'");
        return it->second;
    }
    throw CatalogError("unsupported correction location '" + location + "'");
}

std::string revert_correction(const EntryData& data, const Correction& c) {
    std::string text = location_text(data, c.location);
    auto pos = text.find(c.corrected);
    if (pos == std::string::npos)
        throw CatalogError(data.id + ": corrected text of " + c.location + " not found in the stored value");
    if (text.find(c.corrected, pos + 1) != std::string::npos)
        throw CatalogError(data.id + ": corrected text of " + c.location + " is ambiguous");
    text.replace(pos, c.corrected.size(), c.printed);
    return text;
}

std::vector<std::size_t> Entry::ring_indices() const {
    auto a = in_indices(), b = out_indices();
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::vector<std::size_t> Entry::in_indices() const {
    std::vector<std::size_t> r;
    for (const auto& v : data.ring_in) r.push_back(all->require(v));
    return r;
}

std::vector<std::size_t> Entry::out_indices() const {
    std::vector<std::size_t> r;
    for (const auto& v : data.ring_out) r.push_back(all->require(v));
    return r;
}

Entry materialize(const EntryData& data, const MaterializeOptions& opt) {
    Entry e;
    e.data = data;
    const std::string& id = data.id;

    std::map<std::string, std::string> defs = data.defs;
    std::array<std::string, 6> texts = data.entries;
    for (const auto& [loc, text] : opt.overrides) {
        if (loc.rfind("entries.", 0) == 0) texts[entry_slot(loc.substr(8))] = text;
        else if (loc.rfind("defs.", 0) == 0) defs[loc.substr(5)] = text;
        else throw CatalogError(id + ": unsupported override location '" + loc + "'");
    }

    std::vector<std::string> params = data.parameters;
    if (opt.admit_undeclared) {
        std::set<std::string> known(data.ring_in.begin(), data.ring_in.end());
        known.insert(data.ring_out.begin(), data.ring_out.end());
        known.insert(params.begin(), params.end());
        for (const auto& [k, v] : defs) known.insert(k);
        auto scan = [&](const std::string& t) {
            for (const auto& idf : identifiers(t))
                if (known.insert(idf).second) {
                    params.push_back(idf);
                    e.temporary_params.push_back(idf);
                }
        };
        for (const auto& [k, v] : defs) scan(v);
        for (const auto& t : texts) scan(t);
    }

    try {
        e.all = make_vars(concat({&data.ring_in, &data.ring_out, &params}));
        e.params = make_vars(params);
    } catch (const PolyError& err) {
        throw CatalogError(id + ": " + err.what());
    }
    std::vector<std::string> def_names;
    for (const auto& [k, v] : defs) def_names.push_back(k);
    VarTablePtr pv;
    try {
        pv = make_vars(concat({&e.all->names(), &def_names}));
    } catch (const PolyError& err) {
        throw CatalogError(id + ": definition name clashes with a variable: " + err.what());
    }

    auto parse_at = [&](const std::string& text, const VarTablePtr& vt, const std::string& where) {
        try {
            return parse_poly(text, vt);
        } catch (const ParseError& err) {
            throw CatalogError(id + ": " + where + ": " + err.what());
        }
    };

    std::map<std::string, Poly> raw, expanded;
    for (const auto& [k, v] : defs) raw.emplace(k, parse_at(v, pv, "defs." + k));
    std::map<std::string, int> state;
    std::function<const Poly&(const std::string&)> expand = [&](const std::string& name) -> const Poly& {
        if (state[name] == 2) return expanded.at(name);
        if (state[name] == 1) throw CatalogError(id + ": cyclic definition involving '" + name + "'");
        state[name] = 1;
        std::map<std::string, Poly> sub;
        for (auto i : raw.at(name).support()) {
            const std::string& dep = pv->name(i);
            if (raw.count(dep)) sub.emplace(dep, expand(dep));
        }
        expanded.emplace(name, sub.empty() ? raw.at(name) : raw.at(name).substitute(sub, pv));
        state[name] = 2;
        return expanded.at(name);
    };
    for (const auto& k : def_names) expand(k);

    for (std::size_t i = 0; i < 6; ++i) {
        Poly p = parse_at(texts[i], pv, std::string("entries.") + kEntryNames[i]);
        std::map<std::string, Poly> sub;
        for (auto j : p.support())
            if (expanded.count(pv->name(j))) sub.emplace(pv->name(j), expanded.at(pv->name(j)));
        if (!sub.empty()) p = p.substitute(sub, pv);
        e.d[i] = p.remap(e.all);
    }

    e.v_in = parse_at(data.side_in.poly, e.all, "side_in");
    e.w_out = parse_at(data.side_out.poly, e.all, "side_out");
    if (!e.v_in.uses_only(e.in_indices())) throw CatalogError(id + ": side_in uses variables outside ring_vars_in");
    if (!e.w_out.uses_only(e.out_indices()))
        throw CatalogError(id + ": side_out uses variables outside ring_vars_out");

    for (std::size_t i = 0; i < data.paper_constraints.size(); ++i)
        e.paper_constraints.push_back(
            parse_at(data.paper_constraints[i], e.params, "paper_constraints[" + std::to_string(i) + "]"));
    for (std::size_t i = 0; i < data.paper_constraints_simplified.size(); ++i)
        e.paper_simplified.push_back(parse_at(data.paper_constraints_simplified[i], e.params,
                                              "paper_constraints_simplified[" + std::to_string(i) + "]"));
    if (data.paper_qdim_left) e.paper_ql = parse_at(*data.paper_qdim_left, e.params, "paper_qdim_left");
    if (data.paper_qdim_right) e.paper_qr = parse_at(*data.paper_qdim_right, e.params, "paper_qdim_right");
    return e;
}

namespace {

template <class T>
T required(const json& j, const char* key, const std::string& src) {
    if (!j.contains(key)) throw CatalogError(src + ": missing key '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& err) {
        throw CatalogError(src + ": bad value for '" + key + "': " + err.what());
    }
}

FamilySpec parse_family(const json& f, const std::string& src) {
    FamilySpec s;
    s.label = required<std::string>(f, "label", src);
    const std::string where = src + ": family '" + s.label + "'";
    s.role = f.value("role", std::string("family"));
    if (s.role != "family" && s.role != "exclusion") throw CatalogError(where + ": role must be family or exclusion");
    s.description = f.value("description", std::string());
    const json& q = f.at("quotient");
    s.field = q.value("field", false);
    for (const auto& g : q.at("generators"))
        s.generators.push_back({required<std::string>(g, "name", where), required<std::string>(g, "minpoly", where)});
    s.bindings = required<std::map<std::string, std::string>>(f, "bindings", where);
    if (f.contains("free_defaults")) s.free_defaults = f.at("free_defaults").get<std::map<std::string, std::string>>();
    if (f.contains("expect")) s.expect = f.at("expect").get<std::map<std::string, std::string>>();
    if (f.contains("root_choice")) {
        const json& rc = f.at("root_choice");
        for (const auto& g : s.generators) {
            if (!rc.contains(g.name)) throw CatalogError(where + ": no root choice for generator '" + g.name + "'");
            s.roots.push_back({rc.at(g.name).at("re").get<std::string>(), rc.at(g.name).at("im").get<std::string>()});
        }
    }
    return s;
}

}  // namespace

EntryData parse_entry_json(const std::string& text, const std::string& source) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& err) {
        throw CatalogError(source + ": invalid JSON: " + err.what());
    }
    EntryData d;
    d.source_file = source;
    for (const char* k : {"id", "ring_vars_in", "ring_vars_out", "parameters", "defs", "entries", "paper_constraints",
                          "paper_qdim_left", "paper_qdim_right", "families", "corrections"})
        if (!j.contains(k)) throw CatalogError(source + ": missing key '" + std::string(k) + "'");
    d.id = required<std::string>(j, "id", source);
    const std::string src = source + " (" + d.id + ")";
    if (j.contains("aliases")) d.aliases = j.at("aliases").get<std::vector<std::string>>();
    d.ring_in = required<std::vector<std::string>>(j, "ring_vars_in", src);
    d.ring_out = required<std::vector<std::string>>(j, "ring_vars_out", src);
    d.parameters = required<std::vector<std::string>>(j, "parameters", src);
    d.defs = required<std::map<std::string, std::string>>(j, "defs", src);
    const json& en = j.at("entries");
    for (std::size_t i = 0; i < 6; ++i) {
        if (!en.contains(kEntryNames[i])) throw CatalogError(src + ": missing entry " + kEntryNames[i]);
        d.entries[i] = en.at(kEntryNames[i]).get<std::string>();
    }
    for (auto it = en.begin(); it != en.end(); ++it) entry_slot(it.key());
    for (const char* side : {"side_in", "side_out"}) {
        if (!j.contains(side)) throw CatalogError(src + ": missing key '" + std::string(side) + "'");
        SideSpec s{required<std::string>(j.at(side), "potential", src), required<std::string>(j.at(side), "poly", src)};
        (std::string(side) == "side_in" ? d.side_in : d.side_out) = s;
    }
    d.paper_constraints = required<std::vector<std::string>>(j, "paper_constraints", src);
    if (j.contains("paper_constraints_simplified"))
        d.paper_constraints_simplified = j.at("paper_constraints_simplified").get<std::vector<std::string>>();
    if (!j.at("paper_qdim_left").is_null()) d.paper_qdim_left = j.at("paper_qdim_left").get<std::string>();
    if (!j.at("paper_qdim_right").is_null()) d.paper_qdim_right = j.at("paper_qdim_right").get<std::string>();
    for (const auto& f : j.at("families")) d.families.push_back(parse_family(f, src));
    for (const auto& c : j.at("corrections"))
        d.corrections.push_back({required<std::string>(c, "location", src), required<std::string>(c, "printed", src),
                                 required<std::string>(c, "corrected", src), c.value("justification", std::string())});
    return d;
}

std::map<std::string, TablePotential> parse_potentials_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& err) {
        throw CatalogError(std::string("potentials: invalid JSON: ") + err.what());
    }
    std::map<std::string, TablePotential> out;
    for (auto it = j.at("potentials").begin(); it != j.at("potentials").end(); ++it) {
        TablePotential t;
        t.key = it.key();
        t.family = it->at("singularity").get<std::string>();
        t.poly = it->at("poly").get<std::string>();
        auto w = it->at("weights").get<std::vector<int>>();
        if (w.size() != 4) throw CatalogError("potentials: '" + t.key + "' needs weights [a1,a2,a3,h]");
        t.ws = {w[0], w[1], w[2], w[3]};
        out.emplace(t.key, t);
    }
    return out;
}

std::string Catalog::default_dir() {
    if (const char* env = std::getenv("ORBIMF_CATALOG"); env && *env) return env;
    return ORBIMF_DEFAULT_CATALOG;
}

Catalog Catalog::load(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw CatalogError("catalog directory not found: " + dir);
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        if (!in) throw CatalogError("cannot read " + p.string());
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    Catalog c;
    std::vector<fs::path> files;
    for (const auto& de : fs::directory_iterator(dir))
        if (de.path().extension() == ".json") files.push_back(de.path());
    std::sort(files.begin(), files.end());
    bool have_table = false;
    std::set<std::string> ids;
    for (const auto& f : files) {
        if (f.filename() == "potentials.json") {
            c.table_ = parse_potentials_json(slurp(f));
            have_table = true;
            continue;
        }
        EntryData d = parse_entry_json(slurp(f), f.filename().string());
        if (!ids.insert(d.id).second) throw CatalogError("duplicate entry id '" + d.id + "'");
        c.entries_.push_back(std::move(d));
    }
    if (!have_table) throw CatalogError("catalog has no potentials.json");
    std::sort(c.entries_.begin(), c.entries_.end(),
              [](const EntryData& a, const EntryData& b) { return a.id < b.id; });
    return c;
}

const EntryData& Catalog::find(const std::string& key) const {
    for (const auto& e : entries_)
        if (e.id == key) return e;
    for (const auto& e : entries_)
        for (const auto& a : e.aliases)
            if (a == key) return e;
    const EntryData* hit = nullptr;
    for (const auto& e : entries_) {
        if (e.id.rfind(key, 0) == 0) {
            if (hit) throw CatalogError("ambiguous entry '" + key + "'");
            hit = &e;
        }
    }
    if (!hit || key.empty()) throw CatalogError("unknown entry '" + key + "'");
    return *hit;
}

Poly table_potential(const TablePotential& tp, const VarTablePtr& vt, const std::vector<std::string>& vars) {
    auto xyz = make_vars({"x", "y", "z"});
    Poly p = parse_poly(tp.poly, xyz);
    std::map<std::string, Poly> sub;
    const char* src[3] = {"x", "y", "z"};
    for (int i = 0; i < 3; ++i) sub.emplace(src[i], Poly::variable(vt, vars.at(i)));
    return p.substitute(sub, vt);
}

std::optional<std::vector<std::string>> match_table_potential(const TablePotential& tp, const Poly& p,
                                                              const std::vector<std::string>& vars) {
    std::vector<std::string> perm = vars;
    std::sort(perm.begin(), perm.end());
    do {
        if (table_potential(tp, p.vars(), perm) == p) return perm;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

ValidationReport validate(const EntryData& d, const std::map<std::string, TablePotential>& table) {
    ValidationReport r;
    auto fail = [&](std::string m) {
        r.ok = false;
        r.problems.push_back(std::move(m));
    };
    if (d.ring_in.size() != 3 || d.ring_out.size() != 3) fail("each side needs exactly three ring variables");
    std::set<std::string> ring(d.ring_in.begin(), d.ring_in.end());
    ring.insert(d.ring_out.begin(), d.ring_out.end());
    for (const auto& p : d.parameters)
        if (ring.count(p)) fail("parameter '" + p + "' clashes with a ring variable");

    std::optional<Entry> e;
    try {
        e = materialize(d);
    } catch (const std::exception& err) {
        fail(err.what());
        return r;
    }

    const std::pair<const SideSpec*, const Poly*> sides[2] = {{&d.side_in, &e->v_in}, {&d.side_out, &e->w_out}};
    for (int s = 0; s < 2; ++s) {
        const auto& [spec, poly] = sides[s];
        auto it = table.find(spec->potential);
        if (it == table.end()) {
            fail("unknown table potential '" + spec->potential + "'");
            continue;
        }
        auto m = match_table_potential(it->second, *poly, s == 0 ? d.ring_in : d.ring_out);
        if (!m) fail((s == 0 ? "side_in" : "side_out") + std::string(" does not match table potential ") + spec->potential);
    }

    auto round_trip = [&](const Poly& p, const std::string& what) {
        if (parse_poly(format_poly(p), p.vars()) != p) fail("format/parse round trip fails for " + what);
    };
    for (std::size_t i = 0; i < 6; ++i) round_trip(e->d[i], kEntryNames[i]);
    for (const auto& p : e->paper_constraints) round_trip(p, "paper constraint");
    if (e->paper_ql) round_trip(*e->paper_ql, "paper_qdim_left");
    if (e->paper_qr) round_trip(*e->paper_qr, "paper_qdim_right");

    std::set<std::string> params(d.parameters.begin(), d.parameters.end());
    for (const auto& f : d.families) {
        const std::string where = "family '" + f.label + "'";
        for (const auto& p : d.parameters)
            if (!f.bindings.count(p)) fail(where + ": parameter '" + p + "' unbound");
        std::vector<std::string> free;
        for (const auto& [k, v] : f.bindings) {
            if (!params.count(k)) fail(where + ": binding for undeclared parameter '" + k + "'");
            if (v == "free") {
                free.push_back(k);
                if (!f.free_defaults.count(k)) fail(where + ": free parameter '" + k + "' has no default");
            }
        }
        if (f.roots.size() != f.generators.size()) fail(where + ": root choice count differs from generators");
        try {
            QuotientSpec q(f.generators, f.field, free);
            for (const auto& [k, v] : f.bindings)
                if (v != "free") parse_poly(v, q.vars());
            for (const auto& [k, v] : f.free_defaults) parse_rational(v);
        } catch (const std::exception& err) {
            fail(where + ": " + err.what());
        }
        for (const auto& [side, val] : f.expect)
            if ((side != "left" && side != "right") || (val != "zero" && val != "nonzero"))
                fail(where + ": bad expectation " + side + "=" + val);
    }
    for (const auto& c : d.corrections) {
        try {
            revert_correction(d, c);
        } catch (const std::exception& err) {
            fail(err.what());
        }
    }
    return r;
}

}  // namespace orbimf
