#include "orbimf/monomial.hpp"

#if defined(__AVX2__)
#include <immintrin.h>

namespace orbimf {
namespace {

inline __m256i lo(const Monomial& m) { return _mm256_load_si256(reinterpret_cast<const __m256i*>(m.e.data())); }
inline __m256i hi(const Monomial& m) { return _mm256_load_si256(reinterpret_cast<const __m256i*>(m.e.data() + 16)); }
inline void store(Monomial& r, __m256i a, __m256i b) {
    _mm256_store_si256(reinterpret_cast<__m256i*>(r.e.data()), a);
    _mm256_store_si256(reinterpret_cast<__m256i*>(r.e.data() + 16), b);
}

void v_mul(const Monomial& a, const Monomial& b, Monomial& r) {
    store(r, _mm256_add_epi16(lo(a), lo(b)), _mm256_add_epi16(hi(a), hi(b)));
}

void v_div(const Monomial& a, const Monomial& b, Monomial& r) {
    store(r, _mm256_sub_epi16(lo(a), lo(b)), _mm256_sub_epi16(hi(a), hi(b)));
}

void v_lcm(const Monomial& a, const Monomial& b, Monomial& r) {
    store(r, _mm256_max_epu16(lo(a), lo(b)), _mm256_max_epu16(hi(a), hi(b)));
}

bool v_divides(const Monomial& a, const Monomial& b) {
    __m256i bl = lo(b), bh = hi(b);
    __m256i el = _mm256_cmpeq_epi16(_mm256_max_epu16(lo(a), bl), bl);
    __m256i eh = _mm256_cmpeq_epi16(_mm256_max_epu16(hi(a), bh), bh);
    return _mm256_movemask_epi8(_mm256_and_si256(el, eh)) == -1;
}

bool v_coprime(const Monomial& a, const Monomial& b) {
    __m256i ml = _mm256_min_epu16(lo(a), lo(b));
    __m256i mh = _mm256_min_epu16(hi(a), hi(b));
    __m256i m = _mm256_or_si256(ml, mh);
    return _mm256_testz_si256(m, m) != 0;
}

uint32_t v_degree(const Monomial& a) {
    const __m256i ones = _mm256_set1_epi16(1);
    __m256i s = _mm256_add_epi32(_mm256_madd_epi16(lo(a), ones), _mm256_madd_epi16(hi(a), ones));
    __m128i t = _mm_add_epi32(_mm256_castsi256_si128(s), _mm256_extracti128_si256(s, 1));
    t = _mm_add_epi32(t, _mm_shuffle_epi32(t, 0x4e));
    t = _mm_add_epi32(t, _mm_shuffle_epi32(t, 0xb1));
    return static_cast<uint32_t>(_mm_cvtsi128_si32(t));
}

int v_cmp(const Monomial& a, const Monomial& b) {
    uint32_t da = v_degree(a), db = v_degree(b);
    if (da != db) return da > db ? 1 : -1;
    uint32_t neh = ~static_cast<uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi16(hi(a), hi(b))));
    std::size_t idx;
    if (neh) {
        idx = 16 + (31 - __builtin_clz(neh)) / 2;
    } else {
        uint32_t nel = ~static_cast<uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi16(lo(a), lo(b))));
        if (!nel) return 0;
        idx = (31 - __builtin_clz(nel)) / 2;
    }
    return a.e[idx] < b.e[idx] ? 1 : -1;
}

const MonoKernels kAvx2{"avx2", v_mul, v_div, v_lcm, v_divides, v_coprime, v_degree, v_cmp};

}  // namespace

const MonoKernels* avx2_kernels() { return &kAvx2; }

}  // namespace orbimf

#else

namespace orbimf {
const MonoKernels* avx2_kernels() { return nullptr; }
}  // namespace orbimf

#endif
