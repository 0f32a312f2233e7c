#pragma once

#include <optional>
#include <string>
#include <vector>

#include "growthlab/interval.hpp"
#include "growthlab/poly.hpp"
#include "growthlab/roots.hpp"

namespace growthlab {

// The recursion x_{n+1} = P(x_n) with rational coefficients a_0..a_d,
// a_d > 0, d >= 2, and an integer seed. seed_index records whether the seed
// is called x_0 or x_1 (conventions differ between sources).
struct RecursionSpec {
    std::vector<Rational> coeffs;  // a_0 .. a_d
    BigInt seed;
    unsigned seed_index = 0;

    int degree() const { return (int)coeffs.size() - 1; }
    const Rational& lead() const { return coeffs.back(); }

    void validate() const {
        if (coeffs.size() < 3) throw input_error("recursion: degree must be >= 2");
        if (!(coeffs.back() > 0)) throw input_error("recursion: leading coefficient must be positive");
    }

    QPoly poly() const { return QPoly(coeffs); }

    Rational eval(const Rational& x) const {
        Rational acc = 0;
        for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
        return acc;
    }

    // Parse "P = x^2 - x + 1; x0 = 2" (whitespace-insensitive, x0/x1 label
    // sets seed_index).
    static RecursionSpec parse(const std::string& text);

    std::string to_string() const;
};

struct Orbit {
    std::vector<BigInt> terms;
    std::optional<size_t> divergence_verified_from;
};

// Exact orbit of length count+1 (seed included). Every image must be an
// integer; violations report the offending index. Term sizes grow doubly
// exponentially, so count is capped (default 24) and terms are size-guarded.
inline Orbit iterate_orbit(const RecursionSpec& spec, size_t count, size_t count_cap = 24) {
    spec.validate();
    if (count < 1) throw input_error("iterate_orbit: count must be >= 1");
    if (count > count_cap) throw input_error("iterate_orbit: count exceeds the configured cap");
    Orbit o;
    o.terms.reserve(count + 1);
    o.terms.push_back(spec.seed);
    Rational x(spec.seed);
    for (size_t n = 0; n < count; ++n) {
        Rational next = spec.eval(x);
        if (!rat_is_integer(next))
            throw input_error("iterate_orbit: non-integer orbit value at index " +
                              std::to_string(n + 1));
        BigInt v(next.get_num());
        if (mpz_sizeinbase(v.get_mpz_t(), 2) > (1u << 24))
            throw input_error("iterate_orbit: orbit term exceeds the size guard at index " +
                              std::to_string(n + 1));
        o.terms.push_back(v);
        x = next;
    }
    return o;
}

namespace detail {

// Least integer m with every real root of f at most m (0 if none); decided
// by certified isolation plus exact rational evaluation when a root box
// straddles an integer.
inline BigInt max_real_root_ceiling(const ZPoly& f) {
    if (f.degree() < 1) return BigInt(0);
    BigInt best = 0;
    bool any = false;
    for (mpfr_prec_t wp = 64;; wp *= 2) {
        if (wp > 64 * kDefaultPrecCap) throw precision_insufficient("max_real_root_ceiling");
        bool ok = true;
        any = false;
        BigInt cur = 0;
        for (const auto& r : isolate_real_roots(f, wp)) {
            Rational lo = r.lo_q(), hi = r.hi_q();
            BigInt clo = rat_floor(-lo);  // -floor(-x) = ceil(x)
            clo = -clo;
            BigInt chi = -rat_floor(-hi);
            BigInt c;
            if (clo == chi) {
                c = clo;
            } else {
                // box straddles the integer clo..; the root equals an integer
                // k in the box only if f(k) = 0 (exact check)
                BigInt k = clo;
                if (f.eval(Rational(k)) == 0) {
                    c = k;
                } else {
                    ok = false;
                    break;
                }
            }
            if (!any || c > cur) cur = c;
            any = true;
        }
        if (ok) {
            best = any ? cur : BigInt(0);
            break;
        }
    }
    return best;
}

}  // namespace detail

// Least integer B >= 1 such that x > B certifies both P(x) > x and
// P'(x) > 0 (so the orbit is strictly increasing and escapes): B bounds
// every real root of P(x) - x and of P', decided exactly.
inline BigInt escape_bound(const RecursionSpec& spec) {
    spec.validate();
    QPoly pm = spec.poly() - QPoly({Rational(0), Rational(1)});
    ZPoly f = pm.clear_denominators();
    ZPoly g = spec.poly().derivative().clear_denominators();
    BigInt B = detail::max_real_root_ceiling(f);
    BigInt Bg = detail::max_real_root_ceiling(g);
    if (Bg > B) B = Bg;
    if (B < 1) B = 1;
    return B;
}

// Least index n0 <= probe with x_{n0} > B(P); absent if the orbit never
// exceeds the bound within probe steps.
inline std::optional<size_t> divergence_check(const RecursionSpec& spec, size_t probe) {
    spec.validate();
    if (probe > 10000) throw input_error("divergence_check: probe too large");
    BigInt B = escape_bound(spec);
    Rational x(spec.seed);
    for (size_t n = 0; n <= probe; ++n) {
        if (x > Rational(B)) return n;
        // an orbit drifting to -infinity (odd degree) shrinks forever and
        // can never exceed B; cut it off once the terms get astronomically big
        if (mpz_sizeinbase(x.get_num().get_mpz_t(), 2) > (1u << 20)) return std::nullopt;
        if (n < probe) x = spec.eval(x);
    }
    return std::nullopt;
}

// ---- the y-substitution: y_n = a_d^{1/(d-1)} (x_n + a_{d-1}/(d a_d)) ----

namespace detail {

// a_d^{1/(d-1)} as an exact rational if both numerator and denominator are
// perfect (d-1)-th powers.
inline std::optional<Rational> rational_root_of_lead(const Rational& ad, int dm1) {
    BigInt num = ad.get_num(), den = ad.get_den();
    BigInt rn, rd;
    int en = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), dm1);
    int ed = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), dm1);
    if (en && ed) return Rational(rn, rd);
    return std::nullopt;
}

}  // namespace detail

// Certified enclosures of y_n; exact rational fast path when a_d^{1/(d-1)}
// is rational.
inline std::vector<IntervalReal> to_y_sequence(const RecursionSpec& spec, const Orbit& orbit,
                                               mpfr_prec_t prec) {
    spec.validate();
    if (orbit.terms.empty()) throw input_error("to_y_sequence: empty orbit");
    int d = spec.degree();
    Rational shift = spec.coeffs[d - 1] / (Rational(d) * spec.lead());
    auto rat_c = detail::rational_root_of_lead(spec.lead(), d - 1);
    std::vector<IntervalReal> ys;
    ys.reserve(orbit.terms.size());
    if (rat_c) {
        for (const auto& x : orbit.terms)
            ys.push_back(IntervalReal::from_rational(*rat_c * (Rational(x) + shift), prec));
        return ys;
    }
    IntervalReal c =
        interval_nth_root(IntervalReal::from_rational(spec.lead(), prec + 16), d - 1, prec + 16);
    for (const auto& x : orbit.terms)
        ys.push_back(c * IntervalReal::from_rational(Rational(x) + shift, prec + 16));
    return ys;
}

// Upper bound C(P) on the substitution defect: |y_{n+1} - y_n^d| <= C(P) y_n^{d-2}
// for y_n >= 1, via the identity y_{n+1} = y_n^d + R(y_n) with deg R <= d-2.
// The bound is sum of coefficient bounds of R, plus 1 for slack.
inline Rational substitution_constant(const RecursionSpec& spec, mpfr_prec_t prec = 128) {
    spec.validate();
    int d = spec.degree();
    Rational t = spec.coeffs[d - 1] / (Rational(d) * spec.lead());
    // Q(x) = P(x) + t - a_d (x + t)^d has degree <= d-2 (x^d and x^{d-1} cancel)
    QPoly xt({t, Rational(1)});
    QPoly pw = QPoly::constant(Rational(1));
    for (int i = 0; i < d; ++i) pw = pw * xt;
    QPoly Q = spec.poly() + QPoly::constant(t) - pw * spec.lead();
    if (Q.degree() > d - 2) throw domain_error("substitution_constant: cancellation failed");
    // R(y) = c Q(y/c - t) with c = a_d^{1/(d-1)}; coefficient of y^m is
    // c^{1-m} * sum_j q_j binom(j, m) (-t)^{j-m}
    IntervalReal c =
        interval_nth_root(IntervalReal::from_rational(spec.lead(), prec), d - 1, prec);
    Rational total = 0;
    for (int m = 0; m <= Q.degree(); ++m) {
        Rational inner = 0;
        for (int j = m; j <= Q.degree(); ++j) {
            BigInt binom;
            mpz_bin_uiui(binom.get_mpz_t(), (unsigned long)j, (unsigned long)m);
            inner += Q.coeff(j) * Rational(binom) * rat_pow(-t, j - m);
        }
        IntervalReal cm = interval_pow(c, BigInt(1 - m));
        Rational bound = rat_abs(inner) * std::max(rat_abs(cm.lo_q()), rat_abs(cm.hi_q()));
        total += bound;
    }
    return total + 1;
}

// ---- text format ----

inline RecursionSpec RecursionSpec::parse(const std::string& text) {
    auto semi = text.find(';');
    if (semi == std::string::npos)
        throw input_error("recursion parse: expected 'P = ...; x0 = ...'");
    auto strip = [](std::string s) {
        size_t a = s.find_first_not_of(" \t\r\n");
        size_t b = s.find_last_not_of(" \t\r\n");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string lhs = strip(text.substr(0, semi));
    std::string rhs = strip(text.substr(semi + 1));
    if (lhs.rfind("P", 0) != 0) throw input_error("recursion parse: missing 'P ='");
    auto eq1 = lhs.find('=');
    if (eq1 == std::string::npos) throw input_error("recursion parse: missing '=' after P");
    QPoly p = qpoly_parse(strip(lhs.substr(eq1 + 1)));
    RecursionSpec spec;
    spec.coeffs.assign(p.c.begin(), p.c.end());
    auto eq2 = rhs.find('=');
    if (eq2 == std::string::npos) throw input_error("recursion parse: missing seed assignment");
    std::string seedvar = strip(rhs.substr(0, eq2));
    if (seedvar == "x0")
        spec.seed_index = 0;
    else if (seedvar == "x1")
        spec.seed_index = 1;
    else
        throw input_error("recursion parse: seed must be named x0 or x1");
    std::string seedval = strip(rhs.substr(eq2 + 1));
    try {
        spec.seed = BigInt(seedval);
    } catch (const std::invalid_argument&) {
        throw input_error("recursion parse: seed is not an integer");
    }
    spec.validate();
    return spec;
}

inline std::string RecursionSpec::to_string() const {
    std::string s = "P = " + poly().to_string() + "; x" + std::to_string(seed_index) + " = " +
                    seed.get_str();
    return s;
}

}  // namespace growthlab
