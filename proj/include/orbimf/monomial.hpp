#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <string_view>

namespace orbimf {

inline constexpr std::size_t kMaxVars = 32;

// Exponent vector padded to 32 slots so the AVX2 kernels can load it as two
// 256-bit lanes. Unused slots stay zero.
struct alignas(32) Monomial {
    std::array<uint16_t, kMaxVars> e{};

    bool operator==(const Monomial& o) const {
        return std::memcmp(e.data(), o.e.data(), sizeof(e)) == 0;
    }
    bool operator!=(const Monomial& o) const { return !(*this == o); }
    uint16_t operator[](std::size_t i) const { return e[i]; }
    uint16_t& operator[](std::size_t i) { return e[i]; }
};

struct MonoKernels {
    const char* name;
    void (*mul)(const Monomial&, const Monomial&, Monomial&);
    void (*div)(const Monomial&, const Monomial&, Monomial&);
    void (*lcm)(const Monomial&, const Monomial&, Monomial&);
    bool (*divides)(const Monomial&, const Monomial&);
    bool (*coprime)(const Monomial&, const Monomial&);
    uint32_t (*degree)(const Monomial&);
    int (*cmp)(const Monomial&, const Monomial&);
};

const MonoKernels& scalar_kernels();
// nullptr when the binary was built without AVX2 support.
const MonoKernels* avx2_kernels();
bool cpu_has_avx2();

const MonoKernels& kernels();
// "scalar", "avx2" or "auto". Returns false if the request cannot be honoured.
bool select_kernels(std::string_view which);

inline Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    kernels().mul(a, b, r);
    return r;
}
inline Monomial mono_div(const Monomial& a, const Monomial& b) {
    Monomial r;
    kernels().div(a, b, r);
    return r;
}
inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    kernels().lcm(a, b, r);
    return r;
}
inline bool mono_divides(const Monomial& a, const Monomial& b) { return kernels().divides(a, b); }
inline bool mono_coprime(const Monomial& a, const Monomial& b) { return kernels().coprime(a, b); }
inline uint32_t mono_degree(const Monomial& a) { return kernels().degree(a); }
// degrevlex: >0 if a > b
inline int mono_cmp(const Monomial& a, const Monomial& b) { return kernels().cmp(a, b); }

struct MonoGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return mono_cmp(a, b) > 0; }
};

struct MonoHash {
    std::size_t operator()(const Monomial& m) const noexcept {
        uint64_t h = 1469598103934665603ull;
        for (auto x : m.e) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace orbimf
