#include "orbimf/numberfield.hpp"

#include "orbimf/linalg.hpp"

#include <cmath>

namespace orbimf {

QuotientSpec::QuotientSpec(std::vector<Generator> gens, bool field, std::vector<std::string> extra)
    : gens_(std::move(gens)), field_(field) {
    std::vector<std::string> names;
    for (const auto& g : gens_) names.push_back(g.name);
    for (auto& e : extra) names.push_back(std::move(e));
    vt_ = make_vars(names);
    is_gen_.assign(vt_->size(), false);
    for (std::size_t g = 0; g < gens_.size(); ++g) {
        Poly m = parse_poly(gens_[g].minpoly, vt_);
        std::size_t idx = vt_->require(gens_[g].name);
        if (m.is_zero() || !m.uses_only({idx}) || m.degree_in(idx) == 0)
            throw QuotientError("minimal polynomial of '" + gens_[g].name + "' must be univariate of degree >= 1");
        mpq_class lc = m.lead().c;
        if (lc != 1) throw QuotientError("minimal polynomial of '" + gens_[g].name + "' is not monic");
        deg_.push_back(m.degree_in(idx));
        gidx_.push_back(idx);
        is_gen_[idx] = true;
        min_.push_back(std::move(m));
    }
    powers_.resize(gens_.size());
}

std::size_t QuotientSpec::dimension() const {
    std::size_t d = 1;
    for (auto x : deg_) d *= x;
    return d;
}

const Poly& QuotientSpec::gen_power(std::size_t g, unsigned e) const {
    auto& cache = powers_[g];
    const std::size_t idx = gidx_[g];
    if (cache.empty()) cache.push_back(Poly::constant(vt_, 1));
    while (cache.size() <= e) {
        Poly next = cache.back() * Poly::variable(vt_, idx);
        if (next.degree_in(idx) >= deg_[g]) {
            // t^d = -(tail of minpoly)
            Monomial md;
            md.e[idx] = static_cast<uint16_t>(deg_[g]);
            std::vector<Term> keep;
            mpq_class top = 0;
            for (const auto& t : next.terms())
                if (t.m == md) top = t.c;
                else keep.push_back(t);
            next = Poly::from_terms(vt_, std::move(keep)) - (min_[g] - Poly::monomial(vt_, md, 1)) * top;
        }
        cache.push_back(std::move(next));
    }
    return cache[e];
}

QuotientElem QuotientSpec::reduce(const Poly& p) const {
    Poly src = p.vars() == vt_ ? p : p.remap(vt_);
    std::vector<Term> plain;
    Poly out(vt_);
    for (const auto& t : src.terms()) {
        bool over = false;
        for (std::size_t g = 0; g < gens_.size(); ++g)
            if (t.m.e[gidx_[g]] >= deg_[g]) over = true;
        if (!over) {
            plain.push_back(t);
            continue;
        }
        Monomial rest = t.m;
        Poly f = Poly::constant(vt_, t.c);
        for (std::size_t g = 0; g < gens_.size(); ++g) {
            unsigned e = t.m.e[gidx_[g]];
            if (e < deg_[g]) continue;
            rest.e[gidx_[g]] = 0;
            f = f * gen_power(g, e);
        }
        out += f.mul_term(rest, 1);
    }
    out += Poly::from_terms(vt_, std::move(plain));
    return QuotientElem(this, std::move(out));
}

QuotientElem QuotientSpec::from_string(const std::string& text) const { return reduce(parse_poly(text, vt_)); }

QuotientElem QuotientSpec::one() const { return QuotientElem(this, Poly::constant(vt_, 1)); }

std::vector<Monomial> QuotientSpec::basis() const {
    std::vector<Monomial> out{Monomial{}};
    for (std::size_t g = 0; g < gens_.size(); ++g) {
        std::vector<Monomial> next;
        for (const auto& m : out)
            for (unsigned k = 0; k < deg_[g]; ++k) {
                Monomial x = m;
                x.e[gidx_[g]] = static_cast<uint16_t>(k);
                next.push_back(x);
            }
        out = std::move(next);
    }
    return out;
}

std::optional<QuotientElem> QuotientSpec::invert(const QuotientElem& e) const {
    if (e.is_zero()) return std::nullopt;
    std::vector<std::size_t> gens_only(gidx_.begin(), gidx_.end());
    if (!e.rep().uses_only(gens_only)) return std::nullopt;
    auto b = basis();
    std::unordered_map<Monomial, std::size_t, MonoHash> pos;
    for (std::size_t i = 0; i < b.size(); ++i) pos[b[i]] = i;
    // column j = e * b_j in coordinates
    QMatrix a(b.size(), b.size());
    for (std::size_t j = 0; j < b.size(); ++j) {
        QuotientElem col = reduce(e.rep().mul_term(b[j], 1));
        for (const auto& t : col.rep().terms()) a(pos.at(t.m), j) = t.c;
    }
    std::vector<mpq_class> rhs(b.size(), 0);
    rhs[pos.at(Monomial{})] = 1;
    auto x = solve(a, rhs);
    if (!x) return std::nullopt;
    std::vector<Term> t;
    for (std::size_t j = 0; j < b.size(); ++j)
        if ((*x)[j] != 0) t.push_back({b[j], (*x)[j]});
    QuotientElem inv(this, Poly::from_terms(vt_, std::move(t)));
    if ((inv * e).rep() != one().rep()) return std::nullopt;
    return inv;
}

QuotientElem operator+(const QuotientElem& a, const QuotientElem& b) {
    return QuotientElem(a.spec_ ? a.spec_ : b.spec_, a.rep_ + b.rep_);
}

QuotientElem operator-(const QuotientElem& a, const QuotientElem& b) {
    return QuotientElem(a.spec_ ? a.spec_ : b.spec_, a.rep_ - b.rep_);
}

QuotientElem operator*(const QuotientElem& a, const QuotientElem& b) {
    const QuotientSpec* s = a.spec_ ? a.spec_ : b.spec_;
    if (!s) throw QuotientError("product of elements without quotient");
    return s->reduce(a.rep_ * b.rep_);
}

namespace {

// Dense coefficient list, index = power.
std::vector<mpq_class> dense_univariate(const Poly& m, std::size_t idx) {
    std::vector<mpq_class> c(m.degree_in(idx) + 1, 0);
    for (const auto& t : m.terms()) c[t.m.e[idx]] = t.c;
    return c;
}

struct MComplex {
    mpfr_t re, im;
    explicit MComplex(mpfr_prec_t p) {
        mpfr_init2(re, p);
        mpfr_init2(im, p);
        mpfr_set_zero(re, 1);
        mpfr_set_zero(im, 1);
    }
    MComplex(const MComplex&) = delete;
    MComplex& operator=(const MComplex&) = delete;
    ~MComplex() {
        mpfr_clear(re);
        mpfr_clear(im);
    }
};

// v = p(z), d = p'(z), plain rounding.
void horner(const std::vector<mpq_class>& c, const MComplex& z, MComplex& v, MComplex& d, mpfr_prec_t p) {
    mpfr_t a, b;
    mpfr_inits2(p, a, b, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_zero(v.re, 1);
    mpfr_set_zero(v.im, 1);
    mpfr_set_zero(d.re, 1);
    mpfr_set_zero(d.im, 1);
    for (std::size_t k = c.size(); k-- > 0;) {
        // d = d*z + v
        mpfr_mul(a, d.re, z.re, MPFR_RNDN);
        mpfr_mul(b, d.im, z.im, MPFR_RNDN);
        mpfr_sub(a, a, b, MPFR_RNDN);
        mpfr_mul(b, d.re, z.im, MPFR_RNDN);
        mpfr_fma(b, d.im, z.re, b, MPFR_RNDN);
        mpfr_add(d.re, a, v.re, MPFR_RNDN);
        mpfr_add(d.im, b, v.im, MPFR_RNDN);
        // v = v*z + c_k
        mpfr_mul(a, v.re, z.re, MPFR_RNDN);
        mpfr_mul(b, v.im, z.im, MPFR_RNDN);
        mpfr_sub(a, a, b, MPFR_RNDN);
        mpfr_mul(b, v.re, z.im, MPFR_RNDN);
        mpfr_fma(b, v.im, z.re, b, MPFR_RNDN);
        mpfr_add_q(v.re, a, c[k].get_mpq_t(), MPFR_RNDN);
        mpfr_set(v.im, b, MPFR_RNDN);
    }
    mpfr_clears(a, b, static_cast<mpfr_ptr>(nullptr));
}

CInterval horner_box(const std::vector<mpq_class>& c, const CInterval& z, mpfr_prec_t p) {
    CInterval v(p);
    for (std::size_t k = c.size(); k-- > 0;) v = v * z + CInterval(Interval(c[k], p), Interval(p));
    return v;
}

void newton_refine(const std::vector<mpq_class>& c, MComplex& z, mpfr_prec_t p) {
    MComplex v(p), d(p);
    mpfr_t den, qr, qi, a, tol;
    mpfr_inits2(p, den, qr, qi, a, tol, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_ui_2exp(tol, 1, -static_cast<long>(p) + 8, MPFR_RNDN);
    for (int it = 0; it < 400; ++it) {
        horner(c, z, v, d, p);
        mpfr_sqr(den, d.re, MPFR_RNDN);
        mpfr_sqr(a, d.im, MPFR_RNDN);
        mpfr_add(den, den, a, MPFR_RNDN);
        if (mpfr_zero_p(den)) break;
        // q = v / d = v * conj(d) / |d|^2
        mpfr_mul(qr, v.re, d.re, MPFR_RNDN);
        mpfr_fma(qr, v.im, d.im, qr, MPFR_RNDN);
        mpfr_mul(qi, v.im, d.re, MPFR_RNDN);
        mpfr_mul(a, v.re, d.im, MPFR_RNDN);
        mpfr_sub(qi, qi, a, MPFR_RNDN);
        mpfr_div(qr, qr, den, MPFR_RNDN);
        mpfr_div(qi, qi, den, MPFR_RNDN);
        mpfr_sub(z.re, z.re, qr, MPFR_RNDN);
        mpfr_sub(z.im, z.im, qi, MPFR_RNDN);
        mpfr_abs(qr, qr, MPFR_RNDN);
        mpfr_abs(qi, qi, MPFR_RNDN);
        mpfr_add(a, qr, qi, MPFR_RNDN);
        mpfr_abs(qr, z.re, MPFR_RNDN);
        mpfr_abs(qi, z.im, MPFR_RNDN);
        mpfr_add(qr, qr, qi, MPFR_RNDN);
        if (mpfr_cmp_ui(qr, 1) < 0) mpfr_set_ui(qr, 1, MPFR_RNDN);
        mpfr_mul(qr, qr, tol, MPFR_RNDN);
        if (mpfr_cmp(a, qr) <= 0) break;
    }
    mpfr_clears(den, qr, qi, a, tol, static_cast<mpfr_ptr>(nullptr));
}

}  // namespace

Embedding enclose_roots(const QuotientSpec& spec, const std::vector<RootApprox>& approx, mpfr_prec_t prec) {
    if (approx.size() != spec.generators().size())
        throw QuotientError("root choice must give one approximation per generator");
    Embedding emb;
    emb.prec = prec;
    const mpfr_prec_t work = prec + 32;
    for (std::size_t g = 0; g < approx.size(); ++g) {
        const auto c = dense_univariate(spec.minpoly(g), spec.generator_index(g));
        const auto dc = [&] {
            std::vector<mpq_class> d;
            for (std::size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * static_cast<unsigned long>(k));
            return d;
        }();
        MComplex z(work);
        if (mpfr_set_str(z.re, approx[g].re.c_str(), 10, MPFR_RNDN) != 0 ||
            mpfr_set_str(z.im, approx[g].im.c_str(), 10, MPFR_RNDN) != 0)
            throw QuotientError("malformed root approximation for '" + spec.generators()[g].name + "'");
        const double r0 = std::stod(approx[g].re), i0 = std::stod(approx[g].im);
        newton_refine(c, z, work);
        const double dr = mpfr_get_d(z.re, MPFR_RNDN) - r0, di = mpfr_get_d(z.im, MPFR_RNDN) - i0;
        const double scale = std::max(1.0, std::hypot(r0, i0));
        if (std::hypot(dr, di) > 1e-4 * scale)
            throw QuotientError("root approximation for '" + spec.generators()[g].name +
                                "' does not converge to a nearby root");
        // Round the centre to the working precision of the boxes.
        mpfr_t cr, ci, up, low, rad;
        mpfr_inits2(prec, cr, ci, up, low, rad, static_cast<mpfr_ptr>(nullptr));
        mpfr_set(cr, z.re, MPFR_RNDN);
        mpfr_set(ci, z.im, MPFR_RNDN);
        CInterval pt(Interval(cr, prec), Interval(ci, prec));
        CInterval v = horner_box(c, pt, prec);
        CInterval d = horner_box(dc, pt, prec);
        v.abs_upper(up);
        d.abs_lower(low);
        if (mpfr_zero_p(low)) {
            mpfr_clears(cr, ci, up, low, rad, static_cast<mpfr_ptr>(nullptr));
            throw QuotientError("derivative of minimal polynomial of '" + spec.generators()[g].name +
                                "' not bounded away from zero");
        }
        mpfr_div(rad, up, low, MPFR_RNDU);
        mpfr_mul_ui(rad, rad, static_cast<unsigned long>(c.size() - 1), MPFR_RNDU);
        emb.boxes.emplace_back(Interval::around(cr, rad, prec), Interval::around(ci, rad, prec));
        mpfr_clears(cr, ci, up, low, rad, static_cast<mpfr_ptr>(nullptr));
    }
    return emb;
}

CInterval embed_complex(const QuotientElem& e, const Embedding& emb) {
    const QuotientSpec* spec = e.spec();
    const mpfr_prec_t p = emb.prec;
    CInterval sum(p);
    if (e.is_zero()) return sum;
    if (!spec) throw QuotientError("embed_complex: element has no quotient");
    std::vector<std::size_t> gens;
    for (std::size_t g = 0; g < spec->generators().size(); ++g) gens.push_back(spec->generator_index(g));
    if (!e.rep().uses_only(gens)) throw QuotientError("embed_complex: element has symbolic variables");
    std::vector<std::vector<CInterval>> pw(gens.size());
    for (std::size_t g = 0; g < gens.size(); ++g) {
        pw[g].push_back(CInterval(Interval(mpq_class(1), p), Interval(p)));
        for (unsigned k = 1; k < spec->degree(g); ++k) pw[g].push_back(pw[g].back() * emb.boxes[g]);
    }
    for (const auto& t : e.rep().terms()) {
        CInterval term(Interval(t.c, p), Interval(p));
        for (std::size_t g = 0; g < gens.size(); ++g) {
            unsigned k = t.m.e[gens[g]];
            if (k) term = term * pw[g][k];
        }
        sum = sum + term;
    }
    return sum;
}

NonzeroCertificate certify_nonzero(const QuotientElem& e, const std::vector<RootApprox>& approx,
                                   mpfr_prec_t start, mpfr_prec_t cap) {
    NonzeroCertificate cert;
    if (e.is_zero()) {
        cert.status = NonzeroCertificate::Status::Zero;
        cert.exact = true;
        cert.enclosure = "0";
        return cert;
    }
    const QuotientSpec* spec = e.spec();
    bool symbolic_free = spec && [&] {
        std::vector<std::size_t> gens;
        for (std::size_t g = 0; g < spec->generators().size(); ++g) gens.push_back(spec->generator_index(g));
        return e.rep().uses_only(gens);
    }();
    if (!symbolic_free) throw QuotientError("certify_nonzero: element has symbolic variables");
    for (mpfr_prec_t p = start; p <= cap; p *= 2) {
        Embedding emb = enclose_roots(*spec, approx, p);
        CInterval v = embed_complex(e, emb);
        cert.bits = p;
        cert.enclosure = v.str(12);
        if (!v.contains_zero()) {
            cert.status = NonzeroCertificate::Status::Nonzero;
            cert.exact = spec->field();
            return cert;
        }
    }
    if (spec->field()) {
        cert.status = NonzeroCertificate::Status::Nonzero;
        cert.exact = true;
        return cert;
    }
    cert.status = NonzeroCertificate::Status::Inconclusive;
    return cert;
}

const char* to_string(NonzeroCertificate::Status s) {
    switch (s) {
        case NonzeroCertificate::Status::Zero: return "zero";
        case NonzeroCertificate::Status::Nonzero: return "nonzero";
        case NonzeroCertificate::Status::Inconclusive: return "inconclusive";
    }
    return "?";
}

}  // namespace orbimf
