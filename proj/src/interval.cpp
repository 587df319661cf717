#include "orbimf/interval.hpp"

#include <algorithm>

namespace orbimf {

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    mpfr_set_zero(lo, 1);
    mpfr_set_zero(hi, 1);
}

Interval::Interval(const mpq_class& q, mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    mpfr_set_q(lo, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi, q.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const mpq_class& l, const mpq_class& h, mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    mpfr_set_q(lo, l.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi, h.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const mpfr_t x, mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    mpfr_set(lo, x, MPFR_RNDD);
    mpfr_set(hi, x, MPFR_RNDU);
}

Interval Interval::around(const mpfr_t c, const mpfr_t r, mpfr_prec_t prec) {
    Interval out(prec);
    mpfr_sub(out.lo, c, r, MPFR_RNDD);
    mpfr_add(out.hi, c, r, MPFR_RNDU);
    return out;
}

Interval::Interval(const Interval& o) : prec_(o.prec_) {
    mpfr_init2(lo, prec_);
    mpfr_init2(hi, prec_);
    mpfr_set(lo, o.lo, MPFR_RNDD);
    mpfr_set(hi, o.hi, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept : Interval(o.prec_) {
    mpfr_swap(lo, o.lo);
    mpfr_swap(hi, o.hi);
}

Interval& Interval::operator=(const Interval& o) {
    if (this == &o) return *this;
    prec_ = o.prec_;
    mpfr_set_prec(lo, prec_);
    mpfr_set_prec(hi, prec_);
    mpfr_set(lo, o.lo, MPFR_RNDD);
    mpfr_set(hi, o.hi, MPFR_RNDU);
    return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
    std::swap(prec_, o.prec_);
    mpfr_swap(lo, o.lo);
    mpfr_swap(hi, o.hi);
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo);
    mpfr_clear(hi);
}

bool Interval::contains_zero() const { return mpfr_sgn(lo) <= 0 && mpfr_sgn(hi) >= 0; }

bool Interval::contains(const mpq_class& q) const {
    return mpfr_cmp_q(lo, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi, q.get_mpq_t()) >= 0;
}

bool Interval::subset_of(const Interval& o) const {
    return mpfr_cmp(o.lo, lo) <= 0 && mpfr_cmp(hi, o.hi) <= 0;
}

void Interval::mag(mpfr_t out) const {
    mpfr_t a;
    mpfr_init2(a, prec_);
    mpfr_abs(a, lo, MPFR_RNDU);
    mpfr_abs(out, hi, MPFR_RNDU);
    if (mpfr_cmp(a, out) > 0) mpfr_set(out, a, MPFR_RNDU);
    mpfr_clear(a);
}

void Interval::mig(mpfr_t out) const {
    if (contains_zero()) {
        mpfr_set_zero(out, 1);
    } else if (mpfr_sgn(lo) > 0) {
        mpfr_set(out, lo, MPFR_RNDD);
    } else {
        mpfr_neg(out, hi, MPFR_RNDD);
    }
}

double Interval::mid_double() const {
    return 0.5 * (mpfr_get_d(lo, MPFR_RNDN) + mpfr_get_d(hi, MPFR_RNDN));
}

std::string Interval::str(int digits) const {
    char* a = nullptr;
    char* b = nullptr;
    mpfr_asprintf(&a, "%.*RDe", digits, lo);
    mpfr_asprintf(&b, "%.*RUe", digits, hi);
    std::string s = std::string("[") + a + ", " + b + "]";
    mpfr_free_str(a);
    mpfr_free_str(b);
    return s;
}

Interval operator+(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_add(r.lo, a.lo, b.lo, MPFR_RNDD);
    mpfr_add(r.hi, a.hi, b.hi, MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_sub(r.lo, a.lo, b.hi, MPFR_RNDD);
    mpfr_sub(r.hi, a.hi, b.lo, MPFR_RNDU);
    return r;
}

Interval operator*(const Interval& a, const Interval& b) {
    const mpfr_prec_t p = std::max(a.prec_, b.prec_);
    Interval r(p);
    mpfr_t t;
    mpfr_init2(t, p);
    const mpfr_srcptr xs[2] = {a.lo, a.hi};
    const mpfr_srcptr ys[2] = {b.lo, b.hi};
    bool first = true;
    for (auto x : xs)
        for (auto y : ys) {
            mpfr_mul(t, x, y, MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo) < 0) mpfr_set(r.lo, t, MPFR_RNDD);
            mpfr_mul(t, x, y, MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi) > 0) mpfr_set(r.hi, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

Interval Interval::operator-() const {
    Interval r(prec_);
    mpfr_neg(r.lo, hi, MPFR_RNDD);
    mpfr_neg(r.hi, lo, MPFR_RNDU);
    return r;
}

void CInterval::abs_upper(mpfr_t out) const {
    mpfr_prec_t p = re.precision();
    mpfr_t a, b;
    mpfr_inits2(p, a, b, static_cast<mpfr_ptr>(nullptr));
    re.mag(a);
    im.mag(b);
    mpfr_sqr(a, a, MPFR_RNDU);
    mpfr_sqr(b, b, MPFR_RNDU);
    mpfr_add(a, a, b, MPFR_RNDU);
    mpfr_sqrt(out, a, MPFR_RNDU);
    mpfr_clears(a, b, static_cast<mpfr_ptr>(nullptr));
}

void CInterval::abs_lower(mpfr_t out) const {
    mpfr_prec_t p = re.precision();
    mpfr_t a, b;
    mpfr_inits2(p, a, b, static_cast<mpfr_ptr>(nullptr));
    re.mig(a);
    im.mig(b);
    mpfr_sqr(a, a, MPFR_RNDD);
    mpfr_sqr(b, b, MPFR_RNDD);
    mpfr_add(a, a, b, MPFR_RNDD);
    mpfr_sqrt(out, a, MPFR_RNDD);
    mpfr_clears(a, b, static_cast<mpfr_ptr>(nullptr));
}

std::string CInterval::str(int digits) const { return re.str(digits) + " + i*" + im.str(digits); }

CInterval operator+(const CInterval& a, const CInterval& b) { return {a.re + b.re, a.im + b.im}; }

CInterval operator-(const CInterval& a, const CInterval& b) { return {a.re - b.re, a.im - b.im}; }

CInterval operator*(const CInterval& a, const CInterval& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

CInterval operator*(const Interval& a, const CInterval& b) { return {a * b.re, a * b.im}; }

}  // namespace orbimf
