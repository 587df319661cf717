#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orbimf/grading.hpp"
#include "orbimf/numberfield.hpp"
#include "orbimf/poly.hpp"

namespace orbimf {

class CatalogError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::array<const char*, 6> kEntryNames = {"d15", "d16", "d17", "d25", "d26", "d35"};

struct TablePotential {
    std::string key;     // e.g. "E14v2"
    std::string family;  // e.g. "E14"
    std::string poly;    // in x, y, z
    WeightSystem ws;
};

struct SideSpec {
    std::string potential;  // key into the potentials table
    std::string poly;       // the same potential written in the entry's ring variables
};

struct FamilySpec {
    std::string label;
    std::string role = "family";  // family | exclusion
    std::string description;
    std::vector<Generator> generators;
    bool field = false;
    std::map<std::string, std::string> bindings;  // parameter -> text or "free"
    std::map<std::string, std::string> free_defaults;
    std::vector<RootApprox> roots;             // one per generator
    std::map<std::string, std::string> expect;  // left/right -> zero|nonzero
};

struct Correction {
    std::string location;  // entries.dXY or defs.NAME
    std::string printed;
    std::string corrected;
    std::string justification;
};

// Raw catalog record, polynomial values as text.
struct EntryData {
    std::string id;
    std::vector<std::string> aliases;
    std::vector<std::string> ring_in, ring_out, parameters;
    std::map<std::string, std::string> defs;
    std::array<std::string, 6> entries;
    SideSpec side_in, side_out;
    std::vector<std::string> paper_constraints;
    std::vector<std::string> paper_constraints_simplified;
    std::optional<std::string> paper_qdim_left, paper_qdim_right;
    std::vector<FamilySpec> families;
    std::vector<Correction> corrections;
    std::string source_file;
};

// Entry with every polynomial parsed and definitions expanded.
struct Entry {
    EntryData data;
    VarTablePtr all;     // ring_in, ring_out, parameters
    VarTablePtr params;  // parameters only
    std::array<Poly, 6> d;
    Poly v_in, w_out;  // in `all`
    std::vector<Poly> paper_constraints, paper_simplified;  // in `params`
    std::optional<Poly> paper_ql, paper_qr;               // in `params`
    std::vector<std::string> temporary_params;           // undeclared identifiers admitted on request

    std::vector<std::size_t> ring_indices() const;
    std::vector<std::size_t> in_indices() const;
    std::vector<std::size_t> out_indices() const;
};

struct MaterializeOptions {
    // location -> full replacement text (entries.dXY or defs.NAME)
    std::map<std::string, std::string> overrides;
    // Undeclared identifiers in entries/defs become extra parameters instead of errors.
    bool admit_undeclared = false;
};

Entry materialize(const EntryData& data, const MaterializeOptions& opt = {});

// Identifiers occurring in a grammar string, in order of first appearance.
std::vector<std::string> identifiers(const std::string& text);

// Text of the given location with the correction reverted.
std::string revert_correction(const EntryData& data, const Correction& c);
const std::string& location_text(const EntryData& data, const std::string& location);

class Catalog {
public:
    static Catalog load(const std::string& dir);
    static std::string default_dir();  // ORBIMF_CATALOG or the built-in path

    const std::vector<EntryData>& entries() const { return entries_; }
    const std::map<std::string, TablePotential>& potentials() const { return table_; }
    // Exact id, alias, or unique prefix; throws CatalogError("unknown entry ...").
    const EntryData& find(const std::string& key) const;

private:
    std::vector<EntryData> entries_;
    std::map<std::string, TablePotential> table_;
};

EntryData parse_entry_json(const std::string& text, const std::string& source = "<string>");
std::map<std::string, TablePotential> parse_potentials_json(const std::string& text);

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> problems;
    std::vector<std::string> notes;
};

// Schema-level and algebraic sanity checks that do not need Groebner bases.
ValidationReport validate(const EntryData& data, const std::map<std::string, TablePotential>& table);

// Potential of a table row over the given variables (x,y,z renamed in order).
Poly table_potential(const TablePotential& tp, const VarTablePtr& vt, const std::vector<std::string>& vars);

// Variable bijection from x,y,z to vars under which the table potential equals
// the given polynomial; empty if none.
std::optional<std::vector<std::string>> match_table_potential(const TablePotential& tp, const Poly& p,
                                                              const std::vector<std::string>& vars);

}  // namespace orbimf
