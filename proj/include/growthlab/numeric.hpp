#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace growthlab {

// Exact arbitrary-precision integers and rationals. mpq_class values are
// kept canonical (gcd(num,den)=1, den>0) by GMP itself.
using BigInt = mpz_class;
using Rational = mpq_class;

struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& m) : std::runtime_error(m) {}
};

// Raised when an enclosure is too wide to decide the question asked.
// Escalating precision is the caller's job; nothing widens silently.
struct precision_insufficient : std::runtime_error {
    explicit precision_insufficient(const std::string& m) : std::runtime_error(m) {}
};

struct unsupported_error : std::runtime_error {
    explicit unsupported_error(const std::string& m) : std::runtime_error(m) {}
};

struct input_error : std::runtime_error {
    explicit input_error(const std::string& m) : std::runtime_error(m) {}
};

inline BigInt big_pow(const BigInt& b, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Rational rat_pow(const Rational& b, unsigned long e) {
    Rational r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(b.get_mpq_t()), e);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(b.get_mpq_t()), e);
    return r;
}

inline Rational rat_abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

// floor(num/den) for a rational given canonically.
inline BigInt rat_floor(const Rational& x) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), mpq_numref(x.get_mpq_t()), mpq_denref(x.get_mpq_t()));
    return q;
}

inline bool rat_is_integer(const Rational& x) {
    return mpz_cmp_ui(mpq_denref(x.get_mpq_t()), 1) == 0;
}

// Nearest integer, ties to even. Returns true in *tie when x is exactly
// half-way between two integers.
inline BigInt rat_round_even(const Rational& x, bool* tie = nullptr) {
    BigInt fl = rat_floor(x);
    Rational frac = x - Rational(fl);
    if (tie) *tie = false;
    int c = cmp(frac, Rational(1, 2));
    if (c < 0) return fl;
    if (c > 0) return fl + 1;
    if (tie) *tie = true;
    return mpz_even_p(fl.get_mpz_t()) ? fl : BigInt(fl + 1);
}

// min over integers m of |x - m|, exactly.
inline Rational rat_dist_nearest_int(const Rational& x) {
    Rational d = x - Rational(rat_round_even(x));
    return rat_abs(d);
}

inline Rational parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw input_error("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

}  // namespace growthlab
