#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cstdio>
#include <string>
#include <utility>

#include "growthlab/numeric.hpp"

namespace growthlab {

// Certified enclosure [lo, hi] of a real number. Endpoints are MPFR values
// (integer mantissa times power of two), rounded outward on every operation,
// so the exact image of the inputs is always contained in the result.
class IntervalReal {
  public:
    explicit IntervalReal(mpfr_prec_t prec = 64) : prec_(std::max<mpfr_prec_t>(prec, MPFR_PREC_MIN)) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }
    IntervalReal(const IntervalReal& o) : prec_(o.prec_) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    IntervalReal(IntervalReal&& o) noexcept : prec_(o.prec_) {
        mpfr_init2(lo_, MPFR_PREC_MIN);
        mpfr_init2(hi_, MPFR_PREC_MIN);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    IntervalReal& operator=(IntervalReal o) noexcept {
        std::swap(prec_, o.prec_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        return *this;
    }
    ~IntervalReal() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    static IntervalReal point(long v, mpfr_prec_t prec) {
        IntervalReal r(prec);
        mpfr_set_si(r.lo_, v, MPFR_RNDD);
        mpfr_set_si(r.hi_, v, MPFR_RNDU);
        return r;
    }
    static IntervalReal from_bigint(const BigInt& v, mpfr_prec_t prec) {
        IntervalReal r(prec);
        mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
        return r;
    }
    static IntervalReal from_rational(const Rational& v, mpfr_prec_t prec) {
        IntervalReal r(prec);
        mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
        return r;
    }
    // Exact dyadic endpoints given as rationals; must be representable.
    static IntervalReal from_endpoints(const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
        IntervalReal r(prec);
        mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
        if (mpfr_cmp(r.lo_, r.hi_) > 0) throw domain_error("interval endpoints out of order");
        return r;
    }

    mpfr_prec_t prec() const { return prec_; }
    const __mpfr_struct* lo() const { return lo_; }
    const __mpfr_struct* hi() const { return hi_; }

    // Endpoints are dyadic, hence exactly convertible to rationals.
    Rational lo_q() const { return to_q(lo_); }
    Rational hi_q() const { return to_q(hi_); }
    Rational width_q() const { return hi_q() - lo_q(); }
    Rational mid_q() const { return (lo_q() + hi_q()) / 2; }

    bool contains(const Rational& v) const { return lo_q() <= v && v <= hi_q(); }
    bool contains_zero() const {
        return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
    }
    bool overlaps(const IntervalReal& o) const {
        return !(hi_q() < o.lo_q() || o.hi_q() < lo_q());
    }
    bool subset_of(const IntervalReal& o) const {
        return o.lo_q() <= lo_q() && hi_q() <= o.hi_q();
    }
    bool is_positive() const { return mpfr_sgn(lo_) > 0; }
    bool is_negative() const { return mpfr_sgn(hi_) < 0; }

    IntervalReal at_prec(mpfr_prec_t prec) const {
        IntervalReal r(prec);
        mpfr_set(r.lo_, lo_, MPFR_RNDD);
        mpfr_set(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    IntervalReal operator-() const {
        IntervalReal r(prec_);
        mpfr_neg(r.lo_, hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, lo_, MPFR_RNDU);
        return r;
    }

    friend IntervalReal operator+(const IntervalReal& a, const IntervalReal& b) {
        IntervalReal r(std::max(a.prec_, b.prec_));
        mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    friend IntervalReal operator-(const IntervalReal& a, const IntervalReal& b) {
        return a + (-b);
    }
    friend IntervalReal operator*(const IntervalReal& a, const IntervalReal& b) {
        IntervalReal r(std::max(a.prec_, b.prec_));
        mpfr_t t;
        mpfr_init2(t, r.prec_);
        mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);

        mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
        mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_clear(t);
        return r;
    }
    friend IntervalReal operator/(const IntervalReal& a, const IntervalReal& b) {
        if (b.contains_zero()) throw domain_error("interval division by interval containing zero");
        IntervalReal inv(b.prec_);
        // 1/b with outward rounding; sign of b is constant.
        mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
        mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
        return a * inv;
    }

    friend IntervalReal operator+(const IntervalReal& a, const Rational& q) {
        return a + from_rational(q, a.prec_);
    }
    friend IntervalReal operator*(const IntervalReal& a, const Rational& q) {
        return a * from_rational(q, a.prec_);
    }

    std::string to_string() const;

  private:
    static Rational to_q(const mpfr_t v) {
        if (!mpfr_number_p(v)) throw domain_error("non-finite interval endpoint");
        Rational q;
        mpfr_get_q(q.get_mpq_t(), v);
        return q;
    }

    mpfr_prec_t prec_;
    mpfr_t lo_;
    mpfr_t hi_;

    friend IntervalReal interval_ln(const IntervalReal&, mpfr_prec_t);
    friend IntervalReal interval_exp(const IntervalReal&, mpfr_prec_t);
    friend IntervalReal interval_nth_root(const IntervalReal&, unsigned long, mpfr_prec_t);
    friend IntervalReal interval_pow(const IntervalReal&, const BigInt&);
    friend IntervalReal interval_sqrt(const IntervalReal&, mpfr_prec_t);
    friend IntervalReal interval_hull(const IntervalReal&, const IntervalReal&);
};

inline IntervalReal interval_hull(const IntervalReal& a, const IntervalReal& b) {
    IntervalReal r(std::max(a.prec(), b.prec()));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

inline IntervalReal interval_ln(const IntervalReal& x, mpfr_prec_t prec) {
    if (mpfr_sgn(x.lo()) <= 0) throw domain_error("interval_ln: nonpositive input");
    IntervalReal r(prec);
    mpfr_log(r.lo_, x.lo(), MPFR_RNDD);
    mpfr_log(r.hi_, x.hi(), MPFR_RNDU);
    return r;
}

inline IntervalReal interval_exp(const IntervalReal& x, mpfr_prec_t prec) {
    IntervalReal r(prec);
    mpfr_exp(r.lo_, x.lo(), MPFR_RNDD);
    mpfr_exp(r.hi_, x.hi(), MPFR_RNDU);
    return r;
}

inline IntervalReal interval_sqrt(const IntervalReal& x, mpfr_prec_t prec) {
    if (mpfr_sgn(x.lo()) < 0) throw domain_error("interval_sqrt: negative input");
    IntervalReal r(prec);
    mpfr_sqrt(r.lo_, x.lo(), MPFR_RNDD);
    mpfr_sqrt(r.hi_, x.hi(), MPFR_RNDU);
    return r;
}

inline IntervalReal interval_nth_root(const IntervalReal& x, unsigned long n, mpfr_prec_t prec) {
    if (n == 0) throw domain_error("interval_nth_root: n must be >= 1");
    if (mpfr_sgn(x.lo()) < 0) throw domain_error("interval_nth_root: negative input");
    IntervalReal r(prec);
    mpfr_rootn_ui(r.lo_, x.lo(), n, MPFR_RNDD);
    mpfr_rootn_ui(r.hi_, x.hi(), n, MPFR_RNDU);
    return r;
}

// x^e for an arbitrary (possibly huge) integer exponent. Negative exponents
// require x bounded away from zero.
inline IntervalReal interval_pow(const IntervalReal& x, const BigInt& e) {
    if (e == 0) return IntervalReal::point(1, x.prec());
    if (e < 0) {
        IntervalReal inv = IntervalReal::point(1, x.prec()) / x;
        return interval_pow(inv, BigInt(-e));
    }
    IntervalReal r(x.prec());
    bool odd = mpz_odd_p(e.get_mpz_t());
    if (mpfr_sgn(x.lo()) >= 0) {
        mpfr_pow_z(r.lo_, x.lo(), e.get_mpz_t(), MPFR_RNDD);
        mpfr_pow_z(r.hi_, x.hi(), e.get_mpz_t(), MPFR_RNDU);
    } else if (mpfr_sgn(x.hi()) <= 0) {
        if (odd) {
            mpfr_pow_z(r.lo_, x.lo(), e.get_mpz_t(), MPFR_RNDD);
            mpfr_pow_z(r.hi_, x.hi(), e.get_mpz_t(), MPFR_RNDU);
        } else {
            mpfr_pow_z(r.lo_, x.hi(), e.get_mpz_t(), MPFR_RNDD);
            mpfr_pow_z(r.hi_, x.lo(), e.get_mpz_t(), MPFR_RNDU);
        }
    } else {
        // zero interior
        if (odd) {
            mpfr_pow_z(r.lo_, x.lo(), e.get_mpz_t(), MPFR_RNDD);
            mpfr_pow_z(r.hi_, x.hi(), e.get_mpz_t(), MPFR_RNDU);
        } else {
            mpfr_t a, b;
            mpfr_init2(a, x.prec());
            mpfr_init2(b, x.prec());
            mpfr_pow_z(a, x.lo(), e.get_mpz_t(), MPFR_RNDU);
            mpfr_pow_z(b, x.hi(), e.get_mpz_t(), MPFR_RNDU);
            mpfr_set_zero(r.lo_, 1);
            mpfr_max(r.hi_, a, b, MPFR_RNDU);
            mpfr_clear(a);
            mpfr_clear(b);
        }
    }
    return r;
}

struct NearestIntResult {
    IntervalReal dist;   // encloses min over integers m of |x - m|
    BigInt nearest;      // nearest integer to the midpoint, ties to even
    bool tie = false;    // midpoint exactly half-way between integers
};

// Requires width < 1/4 so the nearest integer is unambiguous (or a tie is
// reported). Fails loudly otherwise; escalation is the caller's job.
inline NearestIntResult dist_nearest_int(const IntervalReal& x) {
    Rational lo = x.lo_q(), hi = x.hi_q();
    if (hi - lo >= Rational(1, 4))
        throw precision_insufficient("dist_nearest_int: interval wider than 1/4");
    NearestIntResult res;
    Rational mid = (lo + hi) / 2;
    res.nearest = rat_round_even(mid, &res.tie);

    // ||t|| over t in [lo,hi]: kinks at integers (value 0) and half-integers
    // (value 1/2); otherwise the extrema are at the endpoints.
    Rational dlo = rat_dist_nearest_int(lo);
    Rational dhi = rat_dist_nearest_int(hi);
    Rational dmin = std::min(dlo, dhi);
    Rational dmax = std::max(dlo, dhi);
    BigInt fl = rat_floor(lo);
    for (int k = 0; k <= 1; ++k) {
        Rational m = Rational(fl) + k;            // integer kink
        if (lo <= m && m <= hi) dmin = 0;
        Rational h = Rational(fl) + Rational(2 * k + 1, 2);  // half-integer kink
        if (lo <= h && h <= hi) dmax = Rational(1, 2);
    }
    res.dist = IntervalReal::from_endpoints(dmin, dmax, x.prec());
    return res;
}

inline std::string IntervalReal::to_string() const {
    mpfr_t mid, rad;
    mpfr_init2(mid, prec_ + 8);
    mpfr_init2(rad, 32);
    mpfr_add(mid, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
    mpfr_sub(rad, hi_, lo_, MPFR_RNDU);
    mpfr_div_2ui(rad, rad, 1, MPFR_RNDU);

    long digits;
    if (mpfr_zero_p(rad)) {
        digits = (long)(prec_ * 0.30103) + 2;
    } else {
        // enough digits that the printed midpoint is no coarser than the radius
        mpfr_exp_t rexp = mpfr_get_exp(rad);
        mpfr_exp_t mexp = mpfr_zero_p(mid) ? 0 : mpfr_get_exp(mid);
        digits = std::max<long>(2, (long)((mexp - rexp) * 0.30103) + 3);
        digits = std::min<long>(digits, (long)(prec_ * 0.30103) + 2);
    }
    char* ms = nullptr;
    mpfr_asprintf(&ms, "%.*Rg", (int)digits, mid);
    char* rs = nullptr;
    mpfr_asprintf(&rs, "%.2Re", rad);
    std::string out = std::string(ms) + "\xc2\xb1" + rs;
    mpfr_free_str(ms);
    mpfr_free_str(rs);
    mpfr_clear(mid);
    mpfr_clear(rad);
    return out;
}

}  // namespace growthlab
