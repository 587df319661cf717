#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace orbimf {

// Closed real interval with MPFR endpoints and outward rounding.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 128);
    Interval(const mpq_class& q, mpfr_prec_t prec);
    Interval(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec);
    // Point interval holding x exactly (x must fit in prec bits).
    Interval(const mpfr_t x, mpfr_prec_t prec);
    // [c - r, c + r] rounded outward.
    static Interval around(const mpfr_t c, const mpfr_t r, mpfr_prec_t prec);
    Interval(const Interval& o);
    Interval(Interval&& o) noexcept;
    Interval& operator=(const Interval& o);
    Interval& operator=(Interval&& o) noexcept;
    ~Interval();

    mpfr_prec_t precision() const { return prec_; }
    bool contains_zero() const;
    bool contains(const mpq_class& q) const;
    bool subset_of(const Interval& o) const;
    // Upper bound of |x| over the interval.
    void mag(mpfr_t out) const;
    // Lower bound of |x| over the interval (0 if it straddles zero).
    void mig(mpfr_t out) const;
    double mid_double() const;
    std::string str(int digits = 20) const;

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    Interval operator-() const;

    mpfr_t lo, hi;

private:
    mpfr_prec_t prec_;
};

struct CInterval {
    Interval re, im;
    explicit CInterval(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
    CInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    // Upper and lower bounds of the modulus over the box.
    void abs_upper(mpfr_t out) const;
    void abs_lower(mpfr_t out) const;
    std::string str(int digits = 20) const;
};

CInterval operator+(const CInterval& a, const CInterval& b);
CInterval operator-(const CInterval& a, const CInterval& b);
CInterval operator*(const CInterval& a, const CInterval& b);
CInterval operator*(const Interval& a, const CInterval& b);

}  // namespace orbimf
