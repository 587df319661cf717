#include "doctest.h"
#include "orbimf/catalog.hpp"
#include "orbimf/constraints.hpp"

using namespace orbimf;

namespace {

const Catalog& cat() {
    static Catalog c = Catalog::load(Catalog::default_dir());
    return c;
}

}  // namespace

TEST_CASE("catalog loads and validates") {
    CHECK(cat().entries().size() == 8);
    CHECK(cat().potentials().size() == 21);
    for (const auto& d : cat().entries()) {
        CAPTURE(d.id);
        auto v = validate(d, cat().potentials());
        for (const auto& p : v.problems) MESSAGE(p);
        CHECK(v.ok);
    }
}

TEST_CASE("lookup") {
    CHECK(cat().find("E14v1_E14v2").id == "E14v1_E14v2");
    CHECK(cat().find("E14").id == "E14v1_E14v2");
    CHECK(cat().find("U12v2v3").id == "U12v2_U12v3");
    CHECK(cat().find("U12v1v3").id == "U12v1_U12v3");
    CHECK(cat().find("W13v1").id == "W13v1_W13v2");
    CHECK_THROWS_WITH_AS(cat().find("X99"), doctest::Contains("unknown entry"), CatalogError);
    CHECK_THROWS_WITH_AS(cat().find("U12"), doctest::Contains("ambiguous"), CatalogError);
    CHECK_THROWS_AS(cat().find(""), CatalogError);
}

TEST_CASE("identifiers") {
    CHECK(identifiers("a1*x^2 + (1/2)*k1 - a1") == std::vector<std::string>{"a1", "x", "k1"});
}

TEST_CASE("schema errors") {
    CHECK_THROWS_AS(parse_entry_json("{", "t"), CatalogError);
    CHECK_THROWS_WITH_AS(parse_entry_json(R"({"id": "x"})", "t"), doctest::Contains("missing key"), CatalogError);
    EntryData d = cat().find("E14");
    d.entries[0] += " + q";
    CHECK_THROWS_AS(materialize(d), CatalogError);
    MaterializeOptions o;
    o.admit_undeclared = true;
    CHECK(materialize(d, o).temporary_params == std::vector<std::string>{"q"});
    EntryData cyc = cat().find("E14");
    cyc.defs["k1"] = "k2 + 1";
    CHECK_THROWS_WITH_AS(materialize(cyc), doctest::Contains("cyclic"), CatalogError);
}

TEST_CASE("validation catches a wrong potential") {
    EntryData d = cat().find("W12");
    d.side_in.poly = "v^5 + u^2*w + 2*w^2";
    auto v = validate(d, cat().potentials());
    CHECK(!v.ok);
}

TEST_CASE("every correction is needed") {
    for (const auto& d : cat().entries()) {
        if (d.corrections.empty()) continue;
        Entry fixed = materialize(d);
        auto der = derive_constraints(fixed, build_8x8(fixed.d));
        for (const auto& c : d.corrections) {
            CAPTURE(d.id);
            CAPTURE(c.printed);
            MaterializeOptions o;
            o.overrides[c.location] = revert_correction(d, c);
            o.admit_undeclared = true;
            Entry broken = materialize(d, o);
            CHECK(location_text(d, c.location) != o.overrides[c.location]);
            // the corrected constraints, read in the reverted parameter ring
            std::vector<Poly> gens;
            for (const auto& g : der.constraints.gens) gens.push_back(g.remap(broken.params));
            auto gb = groebner(gens);
            auto vp = verify_potential(build_8x8(broken.d), broken.v_in, broken.w_out, broken.ring_indices(),
                                       broken.params, gb);
            CHECK(!vp.ok());
        }
    }
}

TEST_CASE("reverting is exact") {
    const auto& d = cat().find("Z13");
    REQUIRE(!d.corrections.empty());
    for (const auto& c : d.corrections) {
        auto txt = revert_correction(d, c);
        CHECK(txt.find(c.printed) != std::string::npos);
        CHECK(txt.size() + c.corrected.size() == location_text(d, c.location).size() + c.printed.size());
    }
    Correction bogus{"entries.d17", "x", "no such text", ""};
    CHECK_THROWS_AS(revert_correction(d, bogus), CatalogError);
}
