#include "orbimf/monomial.hpp"

namespace orbimf {
namespace {

void s_mul(const Monomial& a, const Monomial& b, Monomial& r) {
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<uint16_t>(a.e[i] + b.e[i]);
}

void s_div(const Monomial& a, const Monomial& b, Monomial& r) {
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<uint16_t>(a.e[i] - b.e[i]);
}

void s_lcm(const Monomial& a, const Monomial& b, Monomial& r) {
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = a.e[i] > b.e[i] ? a.e[i] : b.e[i];
}

bool s_divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

bool s_coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (a.e[i] && b.e[i]) return false;
    return true;
}

uint32_t s_degree(const Monomial& a) {
    uint32_t d = 0;
    for (auto x : a.e) d += x;
    return d;
}

int s_cmp(const Monomial& a, const Monomial& b) {
    uint32_t da = s_degree(a), db = s_degree(b);
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = kMaxVars; i-- > 0;) {
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    }
    return 0;
}

const MonoKernels kScalar{"scalar", s_mul, s_div, s_lcm, s_divides, s_coprime, s_degree, s_cmp};

}  // namespace

const MonoKernels& scalar_kernels() { return kScalar; }

}  // namespace orbimf
