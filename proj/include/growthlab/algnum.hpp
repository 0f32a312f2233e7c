#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "growthlab/factor.hpp"
#include "growthlab/roots.hpp"

namespace growthlab {

// An algebraic number: irreducible primitive minimal polynomial with positive
// leading coefficient, plus an isolating box selecting one of its roots.
struct AlgebraicNumber {
    ZPoly minpoly;
    ComplexBox box;

    int degree() const { return minpoly.degree(); }
    bool is_rational() const { return minpoly.degree() == 1; }
    bool is_algebraic_integer() const { return minpoly.is_monic(); }

    Rational as_rational() const {
        if (!is_rational()) throw domain_error("not rational");
        return Rational(-minpoly.coeff(0), minpoly.coeff(1));
    }

    static AlgebraicNumber from_rational(const Rational& q) {
        AlgebraicNumber a;
        a.minpoly = ZPoly({BigInt(-q.get_num()), BigInt(q.get_den())});
        mpfr_prec_t prec = 64;
        a.box.re = IntervalReal::from_rational(q, prec);
        a.box.im = IntervalReal::point(0, prec);
        a.box.is_real = true;
        return a;
    }

    bool is_zero() const { return is_rational() && as_rational() == 0; }
};

namespace detail {

inline bool boxes_overlap(const ComplexBox& a, const ComplexBox& b) {
    return a.re.overlaps(b.re) && a.im.overlaps(b.im);
}

}  // namespace detail

// Refine an isolating box for a root of an irreducible polynomial to the
// requested precision, keeping the same root selected.
inline ComplexBox refine_box(const ZPoly& minpoly, const ComplexBox& box, mpfr_prec_t prec,
                             mpfr_prec_t cap = kDefaultPrecCap) {
    if (minpoly.degree() == 1) {
        Rational q(-minpoly.coeff(0), minpoly.coeff(1));
        ComplexBox b;
        b.re = IntervalReal::from_rational(q, prec);
        b.im = IntervalReal::point(0, prec);
        b.is_real = true;
        return b;
    }
    for (mpfr_prec_t p = prec;; p *= 2) {
        if (p > 64 * cap) throw precision_insufficient("refine_box: cannot separate root");
        auto boxes = isolate_roots(minpoly, p, cap);
        int hit = -1, hits = 0;
        for (size_t i = 0; i < boxes.size(); ++i) {
            if (detail::boxes_overlap(boxes[i], box)) {
                ++hits;
                hit = (int)i;
            }
        }
        if (hits == 1) return boxes[hit];
        // more than one fine box still touches the coarse box: tighten further
    }
}

// Index of the selected root among the sorted isolating boxes of minpoly.
inline int root_index(const AlgebraicNumber& a, mpfr_prec_t prec = 128) {
    if (a.degree() == 1) return 0;
    for (mpfr_prec_t p = prec;; p *= 2) {
        if (p > 64 * kDefaultPrecCap) throw precision_insufficient("root_index");
        auto boxes = isolate_roots(a.minpoly, p);
        int hit = -1, hits = 0;
        for (size_t i = 0; i < boxes.size(); ++i)
            if (detail::boxes_overlap(boxes[i], a.box)) {
                ++hits;
                hit = (int)i;
            }
        if (hits == 1) return hit;
    }
}

inline bool alg_equal(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (!(a.minpoly == b.minpoly)) return false;
    if (a.degree() == 1) return true;
    return root_index(a) == root_index(b);
}

// Construct from a (possibly reducible) polynomial and an approximate
// location; selects the actual root nearest to the hint.
inline AlgebraicNumber alg_root_near(const ZPoly& p, const Rational& re_hint,
                                     const Rational& im_hint, mpfr_prec_t prec = 128) {
    AlgebraicNumber best;
    Rational best_d2;
    bool have = false;
    for (const auto& fac : zpoly_factor(p)) {
        if (fac.poly.degree() < 1) continue;
        for (const auto& b : isolate_roots(fac.poly, prec)) {
            Rational dr = b.re.mid_q() - re_hint, di = b.im.mid_q() - im_hint;
            Rational d2 = dr * dr + di * di;
            if (!have || d2 < best_d2) {
                have = true;
                best_d2 = d2;
                best.minpoly = fac.poly;
                best.box = b;
            }
        }
    }
    if (!have) throw domain_error("alg_root_near: no roots");
    return best;
}

// The unique real root greater than `thresh` (throws if absent or ambiguous).
inline AlgebraicNumber alg_real_root_above(const ZPoly& p, const Rational& thresh,
                                           mpfr_prec_t prec = 128) {
    for (mpfr_prec_t wp = prec; wp <= 64 * kDefaultPrecCap; wp *= 2) {
        std::vector<AlgebraicNumber> hits;
        bool undecided = false;
        for (const auto& fac : zpoly_factor(p)) {
            if (fac.poly.degree() < 1) continue;
            for (const auto& b : isolate_roots(fac.poly, wp)) {
                if (!b.is_real) continue;
                if (b.re.lo_q() > thresh)
                    hits.push_back({fac.poly, b});
                else if (b.re.hi_q() > thresh)
                    undecided = true;
            }
        }
        if (undecided) continue;
        if (hits.size() == 1) return hits[0];
        if (hits.empty()) throw domain_error("alg_real_root_above: no real root above threshold");
        throw domain_error("alg_real_root_above: several real roots above threshold");
    }
    throw precision_insufficient("alg_real_root_above");
}

// ---- exact counting of roots on the unit circle ----

// Number of roots of an irreducible p lying exactly on the unit circle.
// An irreducible polynomial with a root on the circle is self-reciprocal;
// its circle roots correspond to real roots of the trace polynomial
// q(y), p(x) = x^(d/2) q(x + 1/x), lying in the open interval (-2, 2).
inline int count_unit_circle_roots(const ZPoly& p) {
    int d = p.degree();
    if (d <= 1) return 0;  // rational of modulus 1 is +-1, minpoly x -+ 1, handled below
    if (!(p == p.reverse())) return 0;
    if (d % 2 != 0) return 0;  // irreducible reciprocal of odd degree cannot occur (x=+-1 root)
    int m = d / 2;
    // V_k(y) = x^k + x^-k: V_0 = 2, V_1 = y, V_k = y*V_{k-1} - V_{k-2}
    std::vector<ZPoly> V(m + 1);
    V[0] = ZPoly::constant(BigInt(2));
    if (m >= 1) V[1] = ZPoly::x();
    for (int k = 2; k <= m; ++k) V[k] = ZPoly::x() * V[k - 1] - V[k - 2];
    ZPoly q = ZPoly::constant(p.coeff(m));
    for (int k = 1; k <= m; ++k) q = q + V[k] * p.coeff(m + k);
    // count certified real roots of q in the open interval (-2, 2);
    // q(+-2) = p(+-1) != 0 since p is irreducible of degree >= 2
    int count = 0;
    for (mpfr_prec_t wp = 64;; wp *= 2) {
        if (wp > 64 * kDefaultPrecCap)
            throw precision_insufficient("count_unit_circle_roots");
        bool ok = true;
        count = 0;
        for (const auto& b : isolate_roots(q, wp)) {
            if (!b.is_real) continue;
            if (b.re.lo_q() > Rational(-2) && b.re.hi_q() < Rational(2))
                ++count;
            else if (b.re.hi_q() > Rational(-2) && b.re.lo_q() < Rational(2)) {
                ok = false;  // box straddles an endpoint; refine
                break;
            }
        }
        if (ok) break;
    }
    return 2 * count;
}

// ---- Pisot classification ----

struct PisotVerdict {
    bool pisot = false;
    std::string reason;
    std::optional<IntervalReal> dominant_root;
    std::optional<IntervalReal> max_other_modulus;
};

// p must be irreducible; non-monic inputs are rejected as "not an algebraic
// integer". Decided by certified enclosures, with roots of modulus exactly 1
// detected exactly via the reciprocal/trace-polynomial test.
inline PisotVerdict classify_pisot(const ZPoly& p0, mpfr_prec_t cap = kDefaultPrecCap) {
    ZPoly p = p0.primitive();
    if (p.degree() < 1) throw input_error("classify_pisot: constant polynomial");
    if (!zpoly_is_irreducible(p)) throw input_error("classify_pisot: polynomial not irreducible");
    PisotVerdict v;
    if (!p.is_monic()) {
        v.pisot = false;
        v.reason = "not an algebraic integer";
        return v;
    }
    if (p.degree() == 1) {
        Rational root = Rational(-p.coeff(0));
        v.pisot = root > 1;
        v.reason = v.pisot ? "rational integer > 1" : "rational integer <= 1";
        v.dominant_root = IntervalReal::from_rational(root, 64);
        return v;
    }
    int on_circle = count_unit_circle_roots(p);
    if (on_circle > 0) {
        v.pisot = false;
        v.reason = "has conjugates of modulus exactly 1";
        return v;
    }
    for (mpfr_prec_t wp = 96; wp <= 16 * cap; wp *= 2) {
        auto boxes = isolate_roots(p, wp, cap);
        // dominant real root > 1?
        int dom = -1;
        Rational dom_mid;
        for (size_t i = 0; i < boxes.size(); ++i) {
            if (boxes[i].is_real && boxes[i].re.mid_q() > 1) {
                if (dom < 0 || boxes[i].re.mid_q() > dom_mid) {
                    dom = (int)i;
                    dom_mid = boxes[i].re.mid_q();
                }
            }
        }
        if (dom < 0) {
            v.pisot = false;
            v.reason = "no real root greater than 1";
            return v;
        }
        if (!(boxes[dom].re.lo_q() > 1)) continue;
        bool undecided = false;
        bool all_inside = true;
        IntervalReal max_other = IntervalReal::point(0, wp);
        for (size_t i = 0; i < boxes.size(); ++i) {
            if ((int)i == dom) continue;
            IntervalReal m = boxes[i].modulus();
            if (m.hi_q() > max_other.hi_q()) max_other = m;
            if (m.hi_q() < 1) continue;
            if (m.lo_q() >= 1) {
                v.pisot = false;
                v.reason = "a conjugate other than the dominant root has modulus >= 1";
                v.dominant_root = boxes[dom].re;
                v.max_other_modulus = m;
                return v;
            }
            undecided = true;  // straddles 1; no circle roots exist, so refining settles it
        }
        if (undecided) continue;
        if (all_inside) {
            v.pisot = true;
            v.reason = "real root > 1, all other conjugates inside the unit circle";
            v.dominant_root = boxes[dom].re;
            v.max_other_modulus = max_other;
            return v;
        }
    }
    throw precision_insufficient("classify_pisot: undecided at precision cap");
}

// ---- power traces via Newton's identities ----

// All power sums p_0..p_n of the roots of f, exact, by Newton's identities:
// c_d p_k + c_{d-1} p_{k-1} + ... + c_{d-k+1} p_1 = -k c_{d-k}   (k <= d)
// c_d p_k + c_{d-1} p_{k-1} + ... + c_0 p_{k-d}   = 0            (k >  d)
inline std::vector<Rational> power_sums(const ZPoly& f, unsigned long n) {
    int d = f.degree();
    Rational lead(f.lead());
    std::vector<Rational> p(n + 1);
    p[0] = Rational(d);
    for (unsigned long k = 1; k <= n; ++k) {
        Rational s = 0;
        unsigned long lim = std::min<unsigned long>(k - 1, (unsigned long)d);
        for (unsigned long i = 1; i <= lim; ++i) s += Rational(f.coeff(d - (int)i)) * p[k - i];
        if (k <= (unsigned long)d) s += Rational(f.coeff(d - (int)k)) * Rational((unsigned long)k);
        p[k] = -s / lead;
    }
    return p;
}

// Tr_{Q(a)/Q}(a^n) = n-th power sum of the minpoly roots, exact.
inline Rational power_trace(const AlgebraicNumber& a, unsigned long n) {
    return power_sums(a.minpoly, n)[n];
}

// ---- roots of unity ----

// Returns the order m if a is a primitive m-th root of unity (its minimal
// polynomial is the m-th cyclotomic), absent otherwise.
inline std::optional<unsigned long> is_root_of_unity(const AlgebraicNumber& a) {
    if (a.is_zero()) throw domain_error("is_root_of_unity: zero input");
    unsigned long n = (unsigned long)a.degree();
    if (!a.minpoly.is_monic()) return std::nullopt;
    // phi(m) = n forces m <= 2n^2 + 2 comfortably (phi(m) >= sqrt(m/2))
    unsigned long bound = 2 * n * n + 4;
    for (unsigned long m = 1; m <= bound; ++m) {
        if (euler_phi(m) != n) continue;
        if (a.minpoly == cyclotomic(m)) return m;
    }
    return std::nullopt;
}

// ---- characteristic polynomials of derived numbers (power sums route) ----

// Monic polynomial with roots {r^k : r root of f}, from power sums.
inline QPoly charpoly_of_powers(const ZPoly& f, unsigned long k) {
    int d = f.degree();
    auto ps = power_sums(f, (unsigned long)d * k);
    // s_j = sum (r^k)^j = p_{kj}
    std::vector<Rational> s(d + 1);
    for (int j = 1; j <= d; ++j) s[j] = ps[(unsigned long)j * k];
    // Newton's identities: j*e_j = sum_{i=1..j} (-1)^(i-1) e_{j-i} s_i
    std::vector<Rational> e(d + 1);
    e[0] = 1;
    for (int j = 1; j <= d; ++j) {
        Rational acc = 0;
        for (int i = 1; i <= j; ++i) {
            Rational t = e[j - i] * s[i];
            acc += (i % 2 == 1) ? t : Rational(-t);
        }
        e[j] = acc / Rational(j);
    }
    std::vector<Rational> c(d + 1);
    for (int j = 0; j <= d; ++j) c[d - j] = (j % 2 == 0) ? e[j] : Rational(-e[j]);
    return QPoly(std::move(c));
}

// a^k as an algebraic number (k >= 1).
inline AlgebraicNumber alg_pow(const AlgebraicNumber& a, unsigned long k, mpfr_prec_t prec = 192) {
    if (k == 0) return AlgebraicNumber::from_rational(Rational(1));
    if (a.is_rational()) return AlgebraicNumber::from_rational(rat_pow(a.as_rational(), k));
    ZPoly cp = charpoly_of_powers(a.minpoly, k).clear_denominators();
    for (mpfr_prec_t wp = prec;; wp *= 2) {
        if (wp > 64 * kDefaultPrecCap) throw precision_insufficient("alg_pow");
        ComplexBox b = refine_box(a.minpoly, a.box, wp);
        ComplexBox target{b.re, b.im, b.is_real};
        ComplexBox pk{IntervalReal::point(1, wp), IntervalReal::point(0, wp), false};
        for (unsigned long i = 0; i < k; ++i) pk = box_mul(pk, target);
        // match against the roots of exactly one irreducible factor
        std::vector<std::pair<ZPoly, ComplexBox>> hits;
        for (const auto& fac : zpoly_factor(cp)) {
            if (fac.poly.degree() < 1) continue;
            for (const auto& rb : isolate_roots(fac.poly, wp))
                if (detail::boxes_overlap(rb, pk)) hits.push_back({fac.poly, rb});
        }
        if (hits.size() == 1) {
            AlgebraicNumber r;
            r.minpoly = hits[0].first;
            r.box = hits[0].second;
            if (b.is_real) r.box.is_real = true;
            return r;
        }
    }
}

// ---- bivariate resultants by interpolation, and sums/products ----

namespace detail {

// Interpolate the polynomial x -> res_y(f(y), G_x(y)) of degree <= dbound.
template <typename MakeG>
QPoly resultant_interpolate(const ZPoly& f, MakeG make_g, int dbound) {
    int npts = dbound + 1;
    std::vector<Rational> xs(npts), ys(npts);
    for (int i = 0; i < npts; ++i) {
        xs[i] = Rational(i - npts / 2);
        ys[i] = qpoly_resultant(QPoly(f), make_g(xs[i]));
    }
    // Lagrange interpolation
    QPoly acc;
    for (int i = 0; i < npts; ++i) {
        QPoly term = QPoly::constant(ys[i]);
        for (int j = 0; j < npts; ++j) {
            if (j == i) continue;
            QPoly lin({-xs[j], Rational(1)});
            term = term * lin / (xs[i] - xs[j]);
        }
        acc = acc + term;
    }
    return acc;
}

inline AlgebraicNumber select_root(const QPoly& candidates, const ComplexBox& target,
                                   mpfr_prec_t wp) {
    ZPoly zc = candidates.clear_denominators();
    std::vector<std::pair<ZPoly, ComplexBox>> hits;
    for (const auto& fac : zpoly_factor(zc)) {
        if (fac.poly.degree() < 1) continue;
        for (const auto& rb : isolate_roots(fac.poly, wp))
            if (boxes_overlap(rb, target)) hits.push_back({fac.poly, rb});
    }
    if (hits.size() != 1) throw precision_insufficient("select_root: ambiguous match");
    AlgebraicNumber r;
    r.minpoly = hits[0].first;
    r.box = hits[0].second;
    return r;
}

}  // namespace detail

// a + b via res_y(f(y), g(x - y)).
inline AlgebraicNumber alg_add(const AlgebraicNumber& a, const AlgebraicNumber& b,
                               mpfr_prec_t prec = 192) {
    if (a.is_rational() && b.is_rational())
        return AlgebraicNumber::from_rational(a.as_rational() + b.as_rational());
    const ZPoly& f = a.minpoly;
    QPoly g(b.minpoly);
    int dbound = a.degree() * b.degree();
    QPoly res = detail::resultant_interpolate(
        f,
        [&](const Rational& t) {
            // g(t - y) as a polynomial in y
            QPoly comp;
            QPoly lin({t, Rational(-1)});
            QPoly pw = QPoly::constant(Rational(1));
            for (int j = 0; j <= g.degree(); ++j) {
                comp = comp + pw * g.coeff(j);
                pw = pw * lin;
            }
            return comp;
        },
        dbound);
    for (mpfr_prec_t wp = prec;; wp *= 2) {
        if (wp > 64 * kDefaultPrecCap) throw precision_insufficient("alg_add");
        ComplexBox ba = refine_box(a.minpoly, a.box, wp);
        ComplexBox bb = refine_box(b.minpoly, b.box, wp);
        ComplexBox sum = box_add(ba, bb);
        try {
            AlgebraicNumber r = detail::select_root(res, sum, wp);
            r.box.is_real = ba.is_real && bb.is_real;
            return r;
        } catch (const precision_insufficient&) {
            continue;
        }
    }
}

// a * b via res_y(f(y), y^deg(g) g(x/y)); b must be nonzero.
inline AlgebraicNumber alg_mul(const AlgebraicNumber& a, const AlgebraicNumber& b,
                               mpfr_prec_t prec = 192) {
    if (a.is_zero() || b.is_zero()) return AlgebraicNumber::from_rational(Rational(0));
    if (a.is_rational() && b.is_rational())
        return AlgebraicNumber::from_rational(a.as_rational() * b.as_rational());
    if (a.is_rational() || b.is_rational()) {
        // scale the irrational one's minpoly: roots q*r from f(x/q)
        const AlgebraicNumber& irr = a.is_rational() ? b : a;
        Rational q = a.is_rational() ? a.as_rational() : b.as_rational();
        QPoly scaled;
        {
            std::vector<Rational> c(irr.minpoly.c.size());
            Rational qp = 1;
            for (size_t i = 0; i < c.size(); ++i) {
                c[i] = Rational(irr.minpoly.c[i]) / qp;
                qp *= q;
            }
            scaled = QPoly(std::move(c));
        }
        for (mpfr_prec_t wp = prec;; wp *= 2) {
            if (wp > 64 * kDefaultPrecCap) throw precision_insufficient("alg_mul");
            ComplexBox bi = refine_box(irr.minpoly, irr.box, wp);
            ComplexBox prod{bi.re * q, bi.im * q, bi.is_real};
            try {
                AlgebraicNumber r = detail::select_root(scaled, prod, wp);
                r.box.is_real = bi.is_real;
                return r;
            } catch (const precision_insufficient&) {
                continue;
            }
        }
    }
    const ZPoly& f = a.minpoly;
    QPoly g(b.minpoly);
    int dg = g.degree();
    int dbound = a.degree() * b.degree();
    QPoly res = detail::resultant_interpolate(
        f,
        [&](const Rational& t) {
            // y^dg * g(t/y) = sum_j g_j t^j y^(dg-j)
            std::vector<Rational> c(dg + 1, Rational(0));
            Rational tp = 1;
            for (int j = 0; j <= dg; ++j) {
                c[dg - j] = g.coeff(j) * tp;
                tp *= t;
            }
            return QPoly(std::move(c));
        },
        dbound);
    for (mpfr_prec_t wp = prec;; wp *= 2) {
        if (wp > 64 * kDefaultPrecCap) throw precision_insufficient("alg_mul");
        ComplexBox ba = refine_box(a.minpoly, a.box, wp);
        ComplexBox bb = refine_box(b.minpoly, b.box, wp);
        ComplexBox prod = box_mul(ba, bb);
        try {
            AlgebraicNumber r = detail::select_root(res, prod, wp);
            r.box.is_real = ba.is_real && bb.is_real;
            return r;
        } catch (const precision_insufficient&) {
            continue;
        }
    }
}

// 1/a
inline AlgebraicNumber alg_inv(const AlgebraicNumber& a) {
    if (a.is_zero()) throw domain_error("alg_inv: zero");
    if (a.is_rational()) return AlgebraicNumber::from_rational(Rational(1) / a.as_rational());
    AlgebraicNumber r;
    r.minpoly = a.minpoly.reverse().primitive();
    for (mpfr_prec_t wp = 128;; wp *= 2) {
        if (wp > 64 * kDefaultPrecCap) throw precision_insufficient("alg_inv");
        ComplexBox b = refine_box(a.minpoly, a.box, wp);
        ComplexBox one{IntervalReal::point(1, wp), IntervalReal::point(0, wp), true};
        ComplexBox inv = box_div(one, b);
        int hits = 0;
        ComplexBox found;
        for (const auto& rb : isolate_roots(r.minpoly, wp))
            if (detail::boxes_overlap(rb, inv)) {
                ++hits;
                found = rb;
            }
        if (hits == 1) {
            r.box = found;
            r.box.is_real = b.is_real;
            return r;
        }
    }
}

// Order of a/b if it is a root of unity, absent otherwise.
inline std::optional<unsigned long> ratio_root_of_unity_order(const AlgebraicNumber& a,
                                                              const AlgebraicNumber& b) {
    AlgebraicNumber ratio = alg_mul(a, alg_inv(b));
    if (ratio.is_zero()) return std::nullopt;
    return is_root_of_unity(ratio);
}

// ---- Weil height ----

// Absolute logarithmic Weil height via the Mahler measure of the minimal
// polynomial: h(a) = (1/deg) (ln|lead| + sum ln max(1, |root|)).
inline IntervalReal weil_height(const AlgebraicNumber& a, mpfr_prec_t prec = 128,
                                mpfr_prec_t cap = kDefaultPrecCap) {
    if (a.is_zero()) throw domain_error("weil_height: zero input");
    const ZPoly& f = a.minpoly;
    int d = f.degree();
    int on_circle = count_unit_circle_roots(f);
    for (mpfr_prec_t wp = std::max<mpfr_prec_t>(prec, 96); wp <= 16 * cap; wp *= 2) {
        auto boxes = isolate_roots(f, wp, cap);
        IntervalReal acc(wp);
        BigInt lead = f.lead() < 0 ? BigInt(-f.lead()) : f.lead();
        acc = interval_ln(IntervalReal::from_bigint(lead, wp), wp);
        int straddle = 0;
        bool fail = false;
        for (const auto& b : boxes) {
            IntervalReal m = b.modulus();
            if (m.hi_q() <= 1) continue;  // contributes 0
            if (m.lo_q() >= 1) {
                acc = acc + interval_ln(m, wp);
            } else {
                ++straddle;
                if (straddle > on_circle) {
                    fail = true;
                    break;
                }
                // exactly the circle roots may straddle; they contribute ln 1 = 0
            }
        }
        if (fail || straddle != on_circle) continue;
        return acc * Rational(1, d);
    }
    throw precision_insufficient("weil_height: modulus comparisons unresolved at cap");
}

// ---- pseudo-Pisot tuples (Definition: conjugate-closure sum integral,
//      all out-of-tuple conjugates strictly inside the unit circle) ----

struct PseudoPisotVerdict {
    bool pseudo_pisot = false;
    Rational conjugate_sum;       // sum over tuple and B, exact
    bool sum_is_integer = false;
    std::vector<IntervalReal> b_moduli;  // certified moduli of B members
    std::string reason;
};

inline PseudoPisotVerdict pseudo_pisot_tuple(const std::vector<AlgebraicNumber>& elems,
                                             mpfr_prec_t cap = kDefaultPrecCap) {
    if (elems.empty()) throw input_error("pseudo_pisot_tuple: empty tuple");
    for (const auto& e : elems)
        if (e.is_zero()) throw input_error("pseudo_pisot_tuple: zero element");
    for (size_t i = 0; i < elems.size(); ++i)
        for (size_t j = i + 1; j < elems.size(); ++j)
            if (alg_equal(elems[i], elems[j]))
                throw input_error("pseudo_pisot_tuple: elements not distinct");

    PseudoPisotVerdict v;
    // group elements by minimal polynomial; the conjugate closure of each
    // orbit is the full root set, so the total sum is a sum of traces
    std::vector<std::pair<ZPoly, std::vector<int>>> orbits;  // minpoly -> root indices used
    for (const auto& e : elems) {
        int idx = e.degree() == 1 ? 0 : root_index(e);
        bool foundorb = false;
        for (auto& o : orbits)
            if (o.first == e.minpoly) {
                o.second.push_back(idx);
                foundorb = true;
            }
        if (!foundorb) orbits.push_back({e.minpoly, {idx}});
    }
    Rational sum = 0;
    for (const auto& o : orbits) {
        int d = o.first.degree();
        sum += Rational(-o.first.coeff(d - 1), o.first.lead());
    }
    v.conjugate_sum = sum;
    v.sum_is_integer = rat_is_integer(sum);
    if (!v.sum_is_integer) {
        v.pseudo_pisot = false;
        v.reason = "conjugate-closure sum is not an integer";
        return v;
    }
    // every out-of-tuple conjugate must have modulus < 1
    for (const auto& o : orbits) {
        if (o.first.degree() == 1) continue;  // no extra conjugates
        int on_circle = count_unit_circle_roots(o.first);
        bool done = false;
        for (mpfr_prec_t wp = 128; wp <= 16 * cap && !done; wp *= 2) {
            auto boxes = isolate_roots(o.first, wp, cap);
            std::vector<bool> in_tuple(boxes.size(), false);
            for (int idx : o.second) in_tuple[idx] = true;
            int straddle = 0;
            bool retry = false;
            std::vector<IntervalReal> mods;
            for (size_t i = 0; i < boxes.size(); ++i) {
                if (in_tuple[i]) continue;
                IntervalReal m = boxes[i].modulus();
                mods.push_back(m);
                if (m.hi_q() < 1) continue;
                if (m.lo_q() >= 1) {
                    v.pseudo_pisot = false;
                    v.reason = "an out-of-tuple conjugate has modulus >= 1";
                    v.b_moduli = mods;
                    return v;
                }
                ++straddle;
            }
            if (straddle > 0) {
                if (on_circle >= 1) {
                    // roots exactly on the circle can never certify < 1;
                    // if any out-of-tuple box straddles persistently, the
                    // tuple fails whenever a circle root is out of tuple.
                    // Circle roots straddle forever, so straddle <= on_circle
                    // means they are circle roots -> modulus exactly 1 -> fail.
                    if (straddle <= on_circle) {
                        v.pseudo_pisot = false;
                        v.reason = "an out-of-tuple conjugate lies exactly on the unit circle";
                        v.b_moduli = mods;
                        return v;
                    }
                }
                retry = true;
            }
            if (retry) continue;
            for (auto& m : mods) v.b_moduli.push_back(m);
            done = true;
        }
        if (!done)
            throw precision_insufficient("pseudo_pisot_tuple: modulus comparison unresolved");
    }
    v.pseudo_pisot = true;
    v.reason = "conjugate sum integral and all out-of-tuple conjugates inside the unit circle";
    return v;
}

// ---- quadratic Pisot unit ----

struct QuadraticPisotUnit {
    bool strict = false;   // conjugate is exactly alpha^{-1} (constant term +1)
    bool loose = false;    // conjugate is +-alpha^{-1} (constant term +-1)
};

inline QuadraticPisotUnit quadratic_pisot_unit_check(const AlgebraicNumber& a) {
    QuadraticPisotUnit r;
    if (a.degree() != 2 || !a.minpoly.is_monic()) return r;
    BigInt c0 = a.minpoly.coeff(0);
    if (c0 != 1 && c0 != -1) return r;
    // real root > 1?
    for (mpfr_prec_t wp = 96;; wp *= 2) {
        if (wp > 64 * kDefaultPrecCap) throw precision_insufficient("quadratic_pisot_unit_check");
        ComplexBox b = refine_box(a.minpoly, a.box, wp);
        if (!b.is_real) return r;
        if (b.re.hi_q() < 1 || b.re.hi_q() == 1) return r;
        if (b.re.lo_q() > 1) break;
    }
    r.loose = true;
    r.strict = (c0 == 1);
    return r;
}

// ---- degenerate-tuple reduction ----

// Coefficients of the reduced sums live in Q(zeta_h), represented as
// polynomials in zeta_h modulo the h-th cyclotomic.
struct ReducedTerm {
    int base_index;      // index of the group representative alpha_j
    AlgebraicNumber base;  // alpha_j^h
    QPoly zeta_coeff;    // element of Q(zeta_h); coefficient is zeta_coeff(zeta_h) * alpha_j^a
    int power_a;         // residue a of the class
};

struct ResidueClassReduction {
    int residue = 0;
    std::vector<ReducedTerm> terms;
};

struct DegenerateReduction {
    unsigned long h = 1;  // lcm of root-of-unity orders among ratios
    bool already_nondegenerate = true;
    std::vector<ResidueClassReduction> classes;
    // groups[g] = indices i with alpha_i / alpha_rep a root of unity
    std::vector<std::vector<int>> groups;
};

// Splits n into residue classes mod h and merges terms whose bases differ by
// roots of unity; exact cancellation detection requires rational q_i.
inline DegenerateReduction reduce_degenerate(const std::vector<AlgebraicNumber>& alphas,
                                             const std::vector<Rational>& qs) {
    if (alphas.size() != qs.size()) throw input_error("reduce_degenerate: length mismatch");
    size_t k = alphas.size();
    DegenerateReduction out;
    // pairwise root-of-unity ratios
    std::vector<std::vector<unsigned long>> order(k, std::vector<unsigned long>(k, 0));
    unsigned long h = 1;
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j) {
            auto m = ratio_root_of_unity_order(alphas[i], alphas[j]);
            if (m) {
                order[i][j] = order[j][i] = *m;
                h = std::lcm(h, *m);
            }
        }
    out.h = h;
    if (h == 1) {
        out.already_nondegenerate = true;
        ResidueClassReduction cls;
        cls.residue = 0;
        for (size_t i = 0; i < k; ++i) {
            ReducedTerm t;
            t.base_index = (int)i;
            t.base = alphas[i];
            t.zeta_coeff = QPoly::constant(qs[i]);
            t.power_a = 0;
            cls.terms.push_back(std::move(t));
        }
        out.classes.push_back(std::move(cls));
        for (size_t i = 0; i < k; ++i) out.groups.push_back({(int)i});
        return out;
    }
    out.already_nondegenerate = false;
    // group indices whose ratios are roots of unity
    std::vector<int> group_of(k, -1);
    for (size_t i = 0; i < k; ++i) {
        if (group_of[i] >= 0) continue;
        int g = (int)out.groups.size();
        out.groups.push_back({(int)i});
        group_of[i] = g;
        for (size_t j = i + 1; j < k; ++j)
            if (group_of[j] < 0 && order[i][j] > 0) {
                group_of[j] = g;
                out.groups[g].push_back((int)j);
            }
    }
    ZPoly phi_h = cyclotomic(h);
    // zeta_h as an algebraic number: the root with smallest positive argument
    AlgebraicNumber zeta;
    {
        mpfr_prec_t wp = 256;
        mpfr_t ang, s, c;
        mpfr_init2(ang, wp);
        mpfr_init2(s, wp);
        mpfr_init2(c, wp);
        mpfr_const_pi(ang, MPFR_RNDN);
        mpfr_mul_ui(ang, ang, 2, MPFR_RNDN);
        mpfr_div_ui(ang, ang, h, MPFR_RNDN);
        mpfr_sin_cos(s, c, ang, MPFR_RNDN);
        Rational cr, sr;
        mpfr_get_q(cr.get_mpq_t(), c);
        mpfr_get_q(sr.get_mpq_t(), s);
        zeta = alg_root_near(phi_h, cr, sr, 256);
        mpfr_clear(ang);
        mpfr_clear(s);
        mpfr_clear(c);
    }
    // exponent t_i with alpha_i = zeta^{t_i} * alpha_rep, found by matching
    // the certified ratio box against the powers of zeta
    std::vector<unsigned long> expo(k, 0);
    for (size_t g = 0; g < out.groups.size(); ++g) {
        int rep = out.groups[g][0];
        for (size_t m = 1; m < out.groups[g].size(); ++m) {
            int i = out.groups[g][m];
            AlgebraicNumber ratio = alg_mul(alphas[i], alg_inv(alphas[rep]));
            bool matched = false;
            for (mpfr_prec_t wp = 128; wp <= 64 * kDefaultPrecCap && !matched; wp *= 2) {
                ComplexBox rb = refine_box(ratio.minpoly, ratio.box, wp);
                int hits = 0;
                unsigned long hit_t = 0;
                ComplexBox zp{IntervalReal::point(1, wp), IntervalReal::point(0, wp), true};
                ComplexBox zb = refine_box(zeta.minpoly, zeta.box, wp);
                for (unsigned long t = 0; t < h; ++t) {
                    if (detail::boxes_overlap(zp, rb)) {
                        ++hits;
                        hit_t = t;
                    }
                    zp = box_mul(zp, zb);
                }
                if (hits == 1) {
                    expo[i] = hit_t;
                    matched = true;
                }
            }
            if (!matched) throw precision_insufficient("reduce_degenerate: exponent matching");
        }
    }
    // build the residue classes
    for (unsigned long a = 0; a < h; ++a) {
        ResidueClassReduction cls;
        cls.residue = (int)a;
        for (size_t g = 0; g < out.groups.size(); ++g) {
            int rep = out.groups[g][0];
            // merged coefficient sum_i q_i zeta^{t_i a} in Q(zeta_h)
            QPoly coeff;
            for (int i : out.groups[g]) {
                unsigned long e = (expo[i] * a) % h;
                std::vector<Rational> mono(e + 1, Rational(0));
                mono[e] = qs[i];
                QPoly term(std::move(mono));
                QPoly q, r;
                QPoly::divrem(term, QPoly(phi_h), q, r);
                coeff = coeff + r;
            }
            if (coeff.is_zero()) continue;  // exact cancellation
            ReducedTerm t;
            t.base_index = rep;
            t.base = alg_pow(alphas[rep], h);
            t.zeta_coeff = coeff;
            t.power_a = (int)a;
            cls.terms.push_back(std::move(t));
        }
        out.classes.push_back(std::move(cls));
    }
    return out;
}

}  // namespace growthlab
