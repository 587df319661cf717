#include <random>

#include "doctest.h"
#include "orbimf/catalog.hpp"
#include "orbimf/residue.hpp"

using namespace orbimf;

namespace {

const Catalog& cat() {
    static Catalog c = Catalog::load(Catalog::default_dir());
    return c;
}

Poly random_poly(const VarTablePtr& vt, std::mt19937_64& rng, unsigned max_exp, int terms) {
    std::uniform_int_distribution<int> coef(-9, 9);
    std::uniform_int_distribution<unsigned> ex(0, max_exp);
    std::vector<Term> t;
    for (int k = 0; k < terms; ++k) {
        Monomial m;
        for (std::size_t v = 0; v < vt->size(); ++v) m.e[v] = static_cast<uint16_t>(ex(rng));
        t.push_back({m, coef(rng)});
    }
    return Poly::from_terms(vt, std::move(t));
}

Poly hessian_det(const Poly& w) {
    Poly h[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) h[i][j] = w.derivative(i).derivative(j);
    return h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
           h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
}

const std::array<std::size_t, 3> kXYZ{0, 1, 2};

}  // namespace

TEST_CASE("diagonal lift") {
    auto vt = make_vars({"x", "y", "z"});
    Poly w = parse_poly("x^7 + y^3 + z^2", vt);
    auto l = potential_lift(w, kXYZ);
    CHECK(l.n == std::array<unsigned, 3>{6, 2, 1});
    CHECK(l.h[0][0] == parse_poly("1/7", vt));
    CHECK(l.h[1][1] == parse_poly("1/3", vt));
    CHECK(l.h[2][2] == parse_poly("1/2", vt));
    CHECK(l.h[0][1].is_zero());
    CHECK(l.det == parse_poly("1/42", vt));
    // Res[x^5 y / (7x^6, 3y^2, 2z)] = 1/42
    CHECK(grothendieck_residue(parse_poly("x^5*y", vt), l) == parse_poly("1/42", vt));
    CHECK(grothendieck_residue(parse_poly("x^4*y", vt), l).is_zero());
}

TEST_CASE("non-diagonal lift") {
    auto vt = make_vars({"x", "y", "z"});
    Poly w = parse_poly("x^4*z + y^3 + z^2", vt);
    auto l = potential_lift(w, kXYZ);
    CHECK(l.n == std::array<unsigned, 3>{7, 2, 2});
    CHECK(lift_holds(l, {w.derivative(0), w.derivative(1), w.derivative(2)}));
}

TEST_CASE("lift of a U12 potential") {
    auto vt = make_vars({"x", "y", "z"});
    Poly w = parse_poly("x^4 + y^2*z + z^2*y", vt);
    auto l = potential_lift(w, kXYZ);
    CHECK(lift_holds(l, {w.derivative(0), w.derivative(1), w.derivative(2)}));
}

TEST_CASE("degree cap is enforced") {
    auto vt = make_vars({"x", "y", "z"});
    Poly w = parse_poly("x^4*z + y^3 + z^2", vt);
    CHECK_THROWS_AS(potential_lift(w, kXYZ, LiftVariant::Minimal, 3), ResidueError);
}

TEST_CASE("residue of the Hessian is the Milnor number") {
    auto vt = make_vars({"x", "y", "z"});
    for (const auto& [key, tp] : cat().potentials()) {
        CAPTURE(key);
        Poly w = table_potential(tp, vt, {"x", "y", "z"});
        auto vw = weights_from_potential(w, {"x", "y", "z"});
        mpq_class mu = 1;
        for (const auto& [v, q] : vw) mu *= 2 / q - 1;
        auto l = potential_lift(w, kXYZ);
        CHECK(grothendieck_residue(hessian_det(w), l) == Poly::constant(vt, mu));
    }
}

TEST_CASE("residue is independent of the lift and vanishes on the Jacobian ideal") {
    auto vt = make_vars({"x", "y", "z"});
    std::mt19937_64 rng(5);
    for (const auto& [key, tp] : cat().potentials()) {
        CAPTURE(key);
        Poly w = table_potential(tp, vt, {"x", "y", "z"});
        auto a = potential_lift(w, kXYZ, LiftVariant::Minimal);
        auto b = potential_lift(w, kXYZ, LiftVariant::Shifted);
        CHECK(a.n != b.n);
        for (int it = 0; it < 20; ++it) {
            Poly g = random_poly(vt, rng, 6, 6);
            CHECK(grothendieck_residue(g, a) == grothendieck_residue(g, b));
        }
        for (int it = 0; it < 5; ++it) {
            Poly g = random_poly(vt, rng, 3, 3) * w.derivative(it % 3);
            CHECK(grothendieck_residue(g, a).is_zero());
        }
    }
}

TEST_CASE("residue is linear") {
    auto vt = make_vars({"x", "y", "z"});
    Poly w = parse_poly("x^3*z + y^3 + x*z^2", vt);
    auto l = potential_lift(w, kXYZ);
    std::mt19937_64 rng(8);
    for (int it = 0; it < 20; ++it) {
        Poly f = random_poly(vt, rng, 5, 5), g = random_poly(vt, rng, 5, 5);
        CHECK(grothendieck_residue(f * mpq_class(3) + g, l) ==
              grothendieck_residue(f, l) * mpq_class(3) + grothendieck_residue(g, l));
    }
}

TEST_CASE("supertrace") {
    auto vt = make_vars({"x"});
    PolyMatrix8 m;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) m[i][j] = Poly::constant(vt, i == j ? i + 1 : 7);
    CHECK(supertrace(m) == Poly::constant(vt, 1 + 2 + 3 + 4 - 5 - 6 - 7 - 8));
    // supertrace of an odd matrix vanishes; of a product of two odd ones it is graded-commutative
    auto vt3 = make_vars({"x", "y", "z"});
    std::array<Poly, 6> six;
    const char* names[6] = {"x", "y^2", "z", "x*y", "z^3", "y"};
    for (int k = 0; k < 6; ++k) six[k] = parse_poly(names[k], vt3);
    auto mf = build_8x8(six);
    CHECK(supertrace(mf.m).is_zero());
    CHECK(supertrace_of_derivatives(mf, {0, 1}) == -supertrace_of_derivatives(mf, {1, 0}));
    CHECK(supertrace_of_derivatives(mf, {0, 2, 1}) == supertrace(derivative_matrix_product(mf, {0, 2, 1})));
}

TEST_CASE("E12 quantum dimensions") {
    Entry e = materialize(cat().find("E12"));
    auto mf = build_8x8(e.d);
    QdimInput in;
    in.mf = &mf;
    in.v_in = e.v_in;
    in.w_out = e.w_out;
    auto ii = e.in_indices(), oo = e.out_indices();
    std::copy(ii.begin(), ii.end(), in.in.begin());
    std::copy(oo.begin(), oo.end(), in.out.begin());
    in.params = e.params;
    auto q = qdims(in);
    CHECK(q[0].value == Poly::constant(e.params, -1));
    CHECK(q[1].value == Poly::constant(e.params, -1));
    CHECK(qdim(in, Side::Left, LiftVariant::Shifted).value == q[0].value);
    CHECK(qdim(in, Side::Right, LiftVariant::Shifted).value == q[1].value);
}
