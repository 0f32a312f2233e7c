#pragma once

#include <algorithm>
#include <vector>

#include "growthlab/poly.hpp"

namespace growthlab {

// Rectangular complex enclosure with dyadic corners.
struct ComplexBox {
    IntervalReal re, im;
    bool is_real = false;  // certified: the unique root in this box is real

    IntervalReal modulus() const {
        // interval square of a sign-straddling interval must clamp at zero
        auto isq = [](const IntervalReal& x) {
            IntervalReal s = x * x;
            if (s.lo_q() < 0) s = IntervalReal::from_endpoints(Rational(0), s.hi_q(), x.prec());
            return s;
        };
        return interval_sqrt(isq(re) + isq(im), re.prec());
    }
};

inline ComplexBox box_add(const ComplexBox& a, const ComplexBox& b) {
    return {a.re + b.re, a.im + b.im, false};
}
inline ComplexBox box_mul(const ComplexBox& a, const ComplexBox& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re, false};
}
inline ComplexBox box_div(const ComplexBox& a, const ComplexBox& b) {
    IntervalReal n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n, false};
}
inline ComplexBox box_conj(const ComplexBox& a) { return {a.re, -a.im, a.is_real}; }

// Interval evaluation of an integer polynomial at a complex box.
inline ComplexBox eval_box(const ZPoly& p, const ComplexBox& z) {
    mpfr_prec_t prec = z.re.prec();
    ComplexBox acc{IntervalReal::point(0, prec), IntervalReal::point(0, prec), false};
    for (size_t i = p.c.size(); i-- > 0;) {
        acc = box_mul(acc, z);
        acc.re = acc.re + Rational(p.c[i]);
    }
    return acc;
}

namespace detail {

// Plain (non-interval) complex number at fixed MPFR precision, round to
// nearest; used only to drive Aberth iteration, never for certification.
struct CNum {
    mpfr_t re, im;
    explicit CNum(mpfr_prec_t p) {
        mpfr_init2(re, p);
        mpfr_init2(im, p);
        mpfr_set_zero(re, 1);
        mpfr_set_zero(im, 1);
    }
    CNum(const CNum& o) {
        mpfr_init2(re, mpfr_get_prec(o.re));
        mpfr_init2(im, mpfr_get_prec(o.im));
        mpfr_set(re, o.re, MPFR_RNDN);
        mpfr_set(im, o.im, MPFR_RNDN);
    }
    CNum& operator=(const CNum& o) {
        mpfr_set_prec(re, mpfr_get_prec(o.re));
        mpfr_set_prec(im, mpfr_get_prec(o.im));
        mpfr_set(re, o.re, MPFR_RNDN);
        mpfr_set(im, o.im, MPFR_RNDN);
        return *this;
    }
    ~CNum() {
        mpfr_clear(re);
        mpfr_clear(im);
    }
};

inline void cadd(CNum& r, const CNum& a, const CNum& b) {
    mpfr_add(r.re, a.re, b.re, MPFR_RNDN);
    mpfr_add(r.im, a.im, b.im, MPFR_RNDN);
}
inline void csub(CNum& r, const CNum& a, const CNum& b) {
    mpfr_sub(r.re, a.re, b.re, MPFR_RNDN);
    mpfr_sub(r.im, a.im, b.im, MPFR_RNDN);
}
inline void cmul(CNum& r, const CNum& a, const CNum& b) {
    mpfr_prec_t p = mpfr_get_prec(r.re);
    mpfr_t t1, t2;
    mpfr_init2(t1, p);
    mpfr_init2(t2, p);
    mpfr_mul(t1, a.re, b.re, MPFR_RNDN);
    mpfr_mul(t2, a.im, b.im, MPFR_RNDN);
    mpfr_t newre;
    mpfr_init2(newre, p);
    mpfr_sub(newre, t1, t2, MPFR_RNDN);
    mpfr_mul(t1, a.re, b.im, MPFR_RNDN);
    mpfr_mul(t2, a.im, b.re, MPFR_RNDN);
    mpfr_add(r.im, t1, t2, MPFR_RNDN);
    mpfr_set(r.re, newre, MPFR_RNDN);
    mpfr_clear(newre);
    mpfr_clear(t1);
    mpfr_clear(t2);
}
inline void cdiv(CNum& r, const CNum& a, const CNum& b) {
    mpfr_prec_t p = mpfr_get_prec(r.re);
    mpfr_t n, t1, t2, nr, ni;
    mpfr_init2(n, p);
    mpfr_init2(t1, p);
    mpfr_init2(t2, p);
    mpfr_init2(nr, p);
    mpfr_init2(ni, p);
    mpfr_mul(t1, b.re, b.re, MPFR_RNDN);
    mpfr_mul(t2, b.im, b.im, MPFR_RNDN);
    mpfr_add(n, t1, t2, MPFR_RNDN);
    mpfr_mul(t1, a.re, b.re, MPFR_RNDN);
    mpfr_mul(t2, a.im, b.im, MPFR_RNDN);
    mpfr_add(nr, t1, t2, MPFR_RNDN);
    mpfr_mul(t1, a.im, b.re, MPFR_RNDN);
    mpfr_mul(t2, a.re, b.im, MPFR_RNDN);
    mpfr_sub(ni, t1, t2, MPFR_RNDN);
    mpfr_div(r.re, nr, n, MPFR_RNDN);
    mpfr_div(r.im, ni, n, MPFR_RNDN);
    mpfr_clear(n);
    mpfr_clear(t1);
    mpfr_clear(t2);
    mpfr_clear(nr);
    mpfr_clear(ni);
}

inline void ceval(CNum& r, const ZPoly& p, const CNum& z) {
    mpfr_prec_t prec = mpfr_get_prec(z.re);
    CNum acc(prec);
    for (size_t i = p.c.size(); i-- > 0;) {
        CNum t(prec);
        cmul(t, acc, z);
        mpfr_add_z(t.re, t.re, p.c[i].get_mpz_t(), MPFR_RNDN);
        acc = t;
    }
    r = acc;
}

inline double cabs_d(const CNum& a) {
    mpfr_t t, s;
    mpfr_init2(t, 64);
    mpfr_init2(s, 64);
    mpfr_mul(t, a.re, a.re, MPFR_RNDN);
    mpfr_mul(s, a.im, a.im, MPFR_RNDN);
    mpfr_add(t, t, s, MPFR_RNDN);
    mpfr_sqrt(t, t, MPFR_RNDN);
    double d = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    mpfr_clear(s);
    return d;
}

// Aberth-Ehrlich simultaneous iteration; returns approximate roots.
inline std::vector<CNum> aberth(const ZPoly& p, mpfr_prec_t wp, int max_iter) {
    int n = p.degree();
    ZPoly dp = p.derivative();
    // Cauchy bound 1 + max |a_i / a_n|
    Rational lead = rat_abs(Rational(p.lead()));
    Rational R = 0;
    for (int i = 0; i < n; ++i) R = std::max(R, Rational(rat_abs(Rational(p.c[i])) / lead));
    R += 1;
    std::vector<CNum> z;
    z.reserve(n);
    mpfr_t ang, rr;
    mpfr_init2(ang, wp);
    mpfr_init2(rr, wp);
    mpfr_set_q(rr, R.get_mpq_t(), MPFR_RNDN);
    for (int j = 0; j < n; ++j) {
        CNum c(wp);
        // angle 2*pi*(j + 0.35)/n + 0.5, an offset keeping starts off axes
        mpfr_const_pi(ang, MPFR_RNDN);
        mpfr_mul_d(ang, ang, 2.0 * (j + 0.35) / n, MPFR_RNDN);
        mpfr_add_d(ang, ang, 0.5, MPFR_RNDN);
        mpfr_t s, co;
        mpfr_init2(s, wp);
        mpfr_init2(co, wp);
        mpfr_sin_cos(s, co, ang, MPFR_RNDN);
        mpfr_mul(c.re, co, rr, MPFR_RNDN);
        mpfr_mul(c.im, s, rr, MPFR_RNDN);
        mpfr_clear(s);
        mpfr_clear(co);
        z.push_back(c);
    }
    mpfr_clear(ang);
    mpfr_clear(rr);

    mpfr_t tol;
    mpfr_init2(tol, 64);
    mpfr_set_ui_2exp(tol, 1, -(long)wp + 8, MPFR_RNDN);
    double tol_d = mpfr_get_d(tol, MPFR_RNDN);
    mpfr_clear(tol);

    for (int it = 0; it < max_iter; ++it) {
        double worst = 0;
        for (int j = 0; j < n; ++j) {
            CNum pv(wp), dv(wp);
            ceval(pv, p, z[j]);
            ceval(dv, dp, z[j]);
            if (mpfr_zero_p(dv.re) && mpfr_zero_p(dv.im)) continue;
            CNum newton(wp);
            cdiv(newton, pv, dv);
            CNum sum(wp);
            for (int k = 0; k < n; ++k) {
                if (k == j) continue;
                CNum diff(wp), inv(wp), one(wp);
                csub(diff, z[j], z[k]);
                mpfr_set_ui(one.re, 1, MPFR_RNDN);
                cdiv(inv, one, diff);
                cadd(sum, sum, inv);
            }
            CNum denom(wp), t(wp);
            cmul(t, newton, sum);
            mpfr_ui_sub(denom.re, 1, t.re, MPFR_RNDN);
            mpfr_neg(denom.im, t.im, MPFR_RNDN);
            CNum w(wp);
            cdiv(w, newton, denom);
            csub(z[j], z[j], w);
            worst = std::max(worst, cabs_d(w) / std::max(1.0, cabs_d(z[j])));
        }
        if (worst < tol_d) break;
    }
    return z;
}

}  // namespace detail

inline constexpr mpfr_prec_t kDefaultPrecCap = 1 << 14;

// Isolate all roots of p (squarefree part taken automatically): one box per
// root, pairwise disjoint, each certified to contain exactly one root, each
// of diameter <= 2^-prec. Certification: around each numeric approximation
// z_j take the disk of radius deg * |p(z_j)| / |p'(z_j)| evaluated in interval
// arithmetic (a disk that always contains at least one root); if the deg
// disks are pairwise disjoint, each contains exactly one.
inline std::vector<ComplexBox> isolate_roots(const ZPoly& p0, mpfr_prec_t prec,
                                             mpfr_prec_t cap = kDefaultPrecCap) {
    ZPoly p = squarefree_part(p0);
    int n = p.degree();
    if (n <= 0) throw input_error("isolate_roots: degree < 1");
    ZPoly dp = p.derivative();

    for (mpfr_prec_t wp = std::max<mpfr_prec_t>(2 * prec + 64, 128); wp <= 16 * cap; wp *= 2) {
        auto z = detail::aberth(p, wp, 64 + 8 * n);
        // certified radii
        std::vector<Rational> cre(n), cim(n), rad(n);
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) {
            Rational zr, zi;
            mpfr_get_q(zr.get_mpq_t(), z[j].re);
            mpfr_get_q(zi.get_mpq_t(), z[j].im);
            ComplexBox zb{IntervalReal::from_rational(zr, wp), IntervalReal::from_rational(zi, wp), false};
            ComplexBox pv = eval_box(p, zb);
            ComplexBox dv = eval_box(dp, zb);
            IntervalReal pm = pv.modulus();
            IntervalReal dm = dv.modulus();
            if (!dm.is_positive()) { ok = false; break; }
            Rational r = Rational(n) * pm.hi_q() / dm.lo_q();
            cre[j] = zr;
            cim[j] = zi;
            rad[j] = r;
        }
        if (!ok) continue;
        // target diameter 2^-prec => radius <= 2^-(prec+1)
        Rational target = Rational(BigInt(1), BigInt(1) << (unsigned)(prec + 1));
        bool small_enough = true;
        for (int j = 0; j < n; ++j)
            if (rad[j] > target) { small_enough = false; break; }
        if (!small_enough) continue;
        // pairwise disjoint disks: |z_i - z_j|^2 > (r_i + r_j)^2
        bool disjoint = true;
        for (int i = 0; i < n && disjoint; ++i)
            for (int j = i + 1; j < n && disjoint; ++j) {
                Rational d2 = (cre[i] - cre[j]) * (cre[i] - cre[j]) +
                              (cim[i] - cim[j]) * (cim[i] - cim[j]);
                Rational s = rad[i] + rad[j];
                if (d2 <= s * s) disjoint = false;
            }
        if (!disjoint) continue;

        std::vector<ComplexBox> boxes(n, ComplexBox{IntervalReal(prec + 32), IntervalReal(prec + 32), false});
        for (int j = 0; j < n; ++j) {
            boxes[j].re = IntervalReal::from_endpoints(cre[j] - rad[j], cre[j] + rad[j], wp);
            boxes[j].im = IntervalReal::from_endpoints(cim[j] - rad[j], cim[j] + rad[j], wp);
        }
        // reality: the conjugate of the root in disk j lies in the mirrored
        // disk; if that mirror meets disk j only, the root is its own
        // conjugate. A rational sign change across the real slice settles it
        // directly when available.
        bool reality_ok = true;
        for (int j = 0; j < n && reality_ok; ++j) {
            if (!boxes[j].im.contains(Rational(0))) {
                boxes[j].is_real = false;
                continue;
            }
            int hits = 0, hit_idx = -1;
            for (int k = 0; k < n; ++k) {
                Rational d2 = (cre[j] - cre[k]) * (cre[j] - cre[k]) +
                              (-cim[j] - cim[k]) * (-cim[j] - cim[k]);
                Rational s = rad[j] + rad[k];
                if (d2 <= s * s) { ++hits; hit_idx = k; }
            }
            if (hits != 1) { reality_ok = false; break; }
            if (hit_idx == j) {
                boxes[j].is_real = true;
            } else {
                boxes[j].is_real = false;
            }
        }
        if (!reality_ok) continue;
        std::sort(boxes.begin(), boxes.end(), [](const ComplexBox& a, const ComplexBox& b) {
            Rational ar = a.re.mid_q(), br = b.re.mid_q();
            if (ar != br) return ar < br;
            return a.im.mid_q() < b.im.mid_q();
        });
        return boxes;
    }
    throw precision_insufficient("isolate_roots: certification failed below precision cap");
}

// Real roots only, sorted ascending; boxes have exact zero imaginary part.
inline std::vector<IntervalReal> isolate_real_roots(const ZPoly& p, mpfr_prec_t prec,
                                                    mpfr_prec_t cap = kDefaultPrecCap) {
    std::vector<IntervalReal> out;
    for (const auto& b : isolate_roots(p, prec, cap))
        if (b.is_real) out.push_back(b.re);
    return out;
}

}  // namespace growthlab
