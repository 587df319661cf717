#include <random>

#include "doctest.h"
#include "orbimf/monomial.hpp"

using namespace orbimf;

namespace {

Monomial random_mono(std::mt19937_64& rng, unsigned nvars, unsigned maxe) {
    Monomial m;
    std::uniform_int_distribution<unsigned> d(0, maxe);
    for (unsigned i = 0; i < nvars; ++i) m.e[i] = static_cast<uint16_t>(d(rng));
    return m;
}

// Plain degrevlex written out independently of the kernels.
int reference_cmp(const Monomial& a, const Monomial& b) {
    unsigned da = 0, db = 0;
    for (auto x : a.e) da += x;
    for (auto x : b.e) db += x;
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = kMaxVars; i-- > 0;)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    return 0;
}

}  // namespace

TEST_CASE("scalar kernels agree with reference semantics") {
    const auto& k = scalar_kernels();
    std::mt19937_64 rng(1);
    for (int it = 0; it < 2000; ++it) {
        unsigned n = 1 + it % kMaxVars;
        Monomial a = random_mono(rng, n, 5), b = random_mono(rng, n, 5), r;
        k.mul(a, b, r);
        for (std::size_t i = 0; i < kMaxVars; ++i) CHECK(r.e[i] == a.e[i] + b.e[i]);
        k.lcm(a, b, r);
        bool div = true, cop = true;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            CHECK(r.e[i] == std::max(a.e[i], b.e[i]));
            if (a.e[i] > b.e[i]) div = false;
            if (a.e[i] && b.e[i]) cop = false;
        }
        CHECK(k.divides(a, b) == div);
        CHECK(k.coprime(a, b) == cop);
        CHECK(k.cmp(a, b) == reference_cmp(a, b));
    }
}

TEST_CASE("avx2 kernels are equivalent to scalar kernels") {
    const MonoKernels* v = avx2_kernels();
    if (!v || !cpu_has_avx2()) {
        MESSAGE("AVX2 not available; skipping equivalence run");
        return;
    }
    const auto& s = scalar_kernels();
    std::mt19937_64 rng(7);
    for (int it = 0; it < 20000; ++it) {
        unsigned n = 1 + it % kMaxVars;
        Monomial a = random_mono(rng, n, it % 3 == 0 ? 1 : 300), b = random_mono(rng, n, 300);
        if (it % 5 == 0) b = a;
        if (it % 7 == 0) b.e[it % n] = static_cast<uint16_t>(b.e[it % n] + 1);
        Monomial r1, r2;
        s.mul(a, b, r1);
        v->mul(a, b, r2);
        CHECK(r1 == r2);
        s.lcm(a, b, r1);
        v->lcm(a, b, r2);
        CHECK(r1 == r2);
        if (s.divides(b, a)) {
            s.div(a, b, r1);
            v->div(a, b, r2);
            CHECK(r1 == r2);
        }
        CHECK(s.divides(a, b) == v->divides(a, b));
        CHECK(s.coprime(a, b) == v->coprime(a, b));
        CHECK(s.degree(a) == v->degree(a));
        CHECK(s.cmp(a, b) == v->cmp(a, b));
    }
}

TEST_CASE("kernel selection") {
    CHECK(select_kernels("scalar"));
    CHECK(std::string(kernels().name) == "scalar");
    CHECK_FALSE(select_kernels("bogus"));
    CHECK(select_kernels("auto"));
}

TEST_CASE("degrevlex order on small cases") {
    Monomial x, y, z;
    x.e[0] = 1;
    y.e[1] = 1;
    z.e[2] = 1;
    CHECK(mono_cmp(x, y) > 0);
    CHECK(mono_cmp(y, z) > 0);
    Monomial xz = x * z, yy = y * y;
    // same degree: the one with smaller last exponent wins
    CHECK(mono_cmp(yy, xz) > 0);
    CHECK(mono_cmp(x, x) == 0);
}
