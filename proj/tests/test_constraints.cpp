#include "doctest.h"
#include "orbimf/catalog.hpp"
#include "orbimf/constraints.hpp"
#include "orbimf/residue.hpp"

using namespace orbimf;

namespace {

const Catalog& cat() {
    static Catalog c = Catalog::load(Catalog::default_dir());
    return c;
}

struct Prepared {
    Entry e;
    MatrixFactorization mf;
    Derivation der;
    std::vector<Poly> gb;
};

Prepared prepare(const char* id) {
    Prepared p{materialize(cat().find(id)), {}, {}, {}};
    p.mf = build_8x8(p.e.d);
    p.der = derive_constraints(p.e, p.mf);
    p.gb = groebner(p.der.constraints.gens);
    return p;
}

std::array<QdimResult, 2> entry_qdims(const Prepared& p) {
    QdimInput in;
    in.mf = &p.mf;
    in.v_in = p.e.v_in;
    in.w_out = p.e.w_out;
    auto ii = p.e.in_indices(), oo = p.e.out_indices();
    std::copy(ii.begin(), ii.end(), in.in.begin());
    std::copy(oo.begin(), oo.end(), in.out.begin());
    in.params = p.e.params;
    return qdims(in);
}

// Square the matrix after substituting the family point, without going
// through the constraint coefficients.
bool squares_at_point(const Entry& e, const FamilySpec& f) {
    auto pt = family_point(e, f, false);
    std::vector<std::string> extra;
    const auto& pv = pt.ring->vars();
    for (std::size_t i = pt.ring->generators().size(); i < pv->size(); ++i) extra.push_back(pv->name(i));
    // generator names may coincide with ring variables
    for (auto r : e.ring_indices()) extra.push_back("ring_" + e.all->name(r));
    QuotientSpec q(f.generators, false, extra);
    std::map<std::string, Poly> sub;
    for (const auto& [k, v] : pt.values) sub.emplace(k, v.remap(q.vars()));
    for (auto r : e.ring_indices()) sub.emplace(e.all->name(r), Poly::variable(q.vars(), "ring_" + e.all->name(r)));
    std::array<Poly, 6> six;
    for (int k = 0; k < 6; ++k) six[k] = q.reduce(e.d[k].substitute(sub, q.vars())).rep();
    auto s = square(build_8x8(six));
    const Poly want = q.reduce((e.w_out - e.v_in).substitute(sub, q.vars())).rep();
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            if (q.reduce(s[i][j]).rep() != (i == j ? want : Poly(q.vars()))) return false;
    return true;
}

}  // namespace

TEST_CASE("constraint sets are primitive and deduplicated") {
    auto vt = make_vars({"a", "b"});
    auto s = make_constraint_set({parse_poly("2*a - 4*b", vt), parse_poly("a - 2*b", vt), parse_poly("0", vt),
                                  parse_poly("a^2/3 + b/6", vt)},
                                 "derived");
    REQUIRE(s.gens.size() == 2);
    CHECK(s.gens[0] == parse_poly("a - 2*b", vt));
    CHECK(s.gens[1] == parse_poly("2*a^2 + b", vt));
}

TEST_CASE("E14 constraints generate <c^8 + 4>") {
    auto p = prepare("E14");
    CHECK(p.der.epsilon == 1);
    REQUIRE(p.gb.size() == 1);
    CHECK(p.gb[0] == parse_poly("c^8 + 4", p.e.params));
    auto cmp = ideal_compare(p.e.paper_constraints, p.der.constraints.gens);
    CHECK(cmp.equal());
}

TEST_CASE("E12 has no constraints") {
    auto p = prepare("E12");
    CHECK(p.der.constraints.gens.empty());
    CHECK(p.der.epsilon == 1);
}

TEST_CASE("every shipped family lies on the constraint variety") {
    for (const auto& d : cat().entries()) {
        if (d.families.empty()) continue;
        auto p = prepare(d.id.c_str());
        for (const auto& f : d.families) {
            CAPTURE(d.id);
            CAPTURE(f.label);
            auto r = verify_family(p.e, f, p.der.constraints.gens);
            CHECK(r.ok);
            CHECK(squares_at_point(p.e, f));
        }
    }
}

TEST_CASE("a point off the variety is rejected") {
    auto p = prepare("E14");
    FamilySpec f = p.e.data.families.at(0);
    f.generators = {{"c", "c^4 - 2*c^2 + 3"}};
    f.bindings["c"] = "c";
    auto r = verify_family(p.e, f, p.der.constraints.gens);
    CHECK(!r.ok);
    CHECK(!r.residues.empty());
    CHECK(!squares_at_point(p.e, f));
}

TEST_CASE("quantum dimensions at E14 family 1") {
    auto p = prepare("E14");
    auto q = entry_qdims(p);
    const auto& f = p.e.data.families.at(0);
    REQUIRE(f.label == "family1");
    auto l = nonvanishing_check(p.e, f, q[0].value);
    auto r = nonvanishing_check(p.e, f, q[1].value);
    CHECK(l.status == NonzeroCertificate::Status::Nonzero);
    CHECK(r.status == NonzeroCertificate::Status::Nonzero);
    // qdim_l * qdim_r is 1 on the variety
    CHECK(normal_form(q[0].value * q[1].value, p.gb) == Poly::constant(p.e.params, 1));
    // a zero value is reported as zero
    CHECK(nonvanishing_check(p.e, f, parse_poly("c^8 + 4", p.e.params)).status == NonzeroCertificate::Status::Zero);
}

TEST_CASE("W12: eliminating a2 recovers the printed ideal") {
    auto p = prepare("W12");
    auto cmp = ideal_compare_bases(p.e.paper_constraints, groebner(p.e.paper_constraints), p.der.constraints.gens, p.gb);
    CHECK(cmp.a_in_b);
    auto el = eliminate_linear(p.der.constraints.gens, "a2");
    REQUIRE(el);
    auto c2 = ideal_compare(p.e.paper_constraints, *el);
    CHECK(c2.equal());
    CHECK(!eliminate_linear(p.der.constraints.gens, "nosuch"));
}

TEST_CASE("eliminate_linear needs a constant coefficient") {
    auto vt = make_vars({"a", "b"});
    std::vector<Poly> g = {parse_poly("a*b - 1", vt), parse_poly("b^2 - 2", vt)};
    CHECK(!eliminate_linear(g, "a"));
    g.push_back(parse_poly("3*a - b", vt));
    auto el = eliminate_linear(g, "a");
    REQUIRE(el);
    CHECK(el->at(0) == parse_poly("1/3*b^2 - 1", vt));
}

TEST_CASE("classification of printed formulas") {
    auto vt = make_vars({"c"});
    std::vector<Poly> basis = {parse_poly("c^8 + 4", vt)};
    Poly same = parse_poly("c", vt), other = parse_poly("-1/4*c^7", vt);
    CHECK(classify_qdim(std::nullopt, same, other, basis).kind == MatchKind::Missing);
    CHECK(classify_qdim(parse_poly("c", vt), same, other, basis).kind == MatchKind::Exact);
    CHECK(classify_qdim(parse_poly("c + c^8 + 4", vt), same, other, basis).kind == MatchKind::ZeroNormalForm);
    auto u = classify_qdim(parse_poly("-3*c", vt), same, other, basis);
    CHECK(u.kind == MatchKind::UnitMultiple);
    CHECK(u.ratio == -3);
    auto s = classify_qdim(parse_poly("-c^7/2", vt), same, other, basis);
    CHECK(s.kind == MatchKind::SwappedUnitMultiple);
    CHECK(s.ratio == 2);
    CHECK(classify_qdim(parse_poly("c^2", vt), same, other, basis).kind == MatchKind::Mismatch);
}
