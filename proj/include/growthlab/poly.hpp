#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "growthlab/interval.hpp"
#include "growthlab/numeric.hpp"

namespace growthlab {

// Dense univariate polynomials, coefficient of x^i at index i.
// Invariant: no trailing zero coefficients; the zero polynomial is empty.

struct QPoly;

struct ZPoly {
    std::vector<BigInt> c;

    ZPoly() = default;
    explicit ZPoly(std::vector<BigInt> coeffs) : c(std::move(coeffs)) { trim(); }
    static ZPoly constant(const BigInt& v) { return ZPoly({v}); }
    static ZPoly x() { return ZPoly({BigInt(0), BigInt(1)}); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return (int)c.size() - 1; }  // -1 for zero
    const BigInt& lead() const { return c.back(); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }

    BigInt coeff(int i) const { return (i >= 0 && i < (int)c.size()) ? c[i] : BigInt(0); }

    bool operator==(const ZPoly& o) const { return c == o.c; }

    friend ZPoly operator+(const ZPoly& a, const ZPoly& b) {
        std::vector<BigInt> r(std::max(a.c.size(), b.c.size()), BigInt(0));
        for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
        return ZPoly(std::move(r));
    }
    friend ZPoly operator-(const ZPoly& a, const ZPoly& b) {
        std::vector<BigInt> r(std::max(a.c.size(), b.c.size()), BigInt(0));
        for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
        return ZPoly(std::move(r));
    }
    friend ZPoly operator*(const ZPoly& a, const ZPoly& b) {
        if (a.is_zero() || b.is_zero()) return ZPoly();
        std::vector<BigInt> r(a.c.size() + b.c.size() - 1, BigInt(0));
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
        return ZPoly(std::move(r));
    }
    ZPoly operator-() const {
        ZPoly r = *this;
        for (auto& v : r.c) v = -v;
        return r;
    }
    friend ZPoly operator*(const ZPoly& a, const BigInt& k) {
        if (k == 0) return ZPoly();
        ZPoly r = a;
        for (auto& v : r.c) v *= k;
        return r;
    }

    ZPoly derivative() const {
        if (c.size() <= 1) return ZPoly();
        std::vector<BigInt> r(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * BigInt((unsigned long)i);
        return ZPoly(std::move(r));
    }

    BigInt content() const {
        BigInt g = 0;
        for (const auto& v : c) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            if (g == 1) break;
        }
        return g;
    }
    // Primitive part with positive leading coefficient.
    ZPoly primitive() const {
        if (is_zero()) return ZPoly();
        BigInt g = content();
        if (lead() < 0) g = -g;
        ZPoly r = *this;
        for (auto& v : r.c) v /= g;
        return r;
    }

    // Reversal x^deg * p(1/x).
    ZPoly reverse() const {
        std::vector<BigInt> r(c.rbegin(), c.rend());
        return ZPoly(std::move(r));
    }
    bool is_reciprocal() const {
        if (is_zero()) return false;
        return *this == reverse() || *this == -reverse();
    }

    // p(k * x) for integer k.
    ZPoly scale_arg(const BigInt& k) const {
        ZPoly r = *this;
        BigInt pw = 1;
        for (size_t i = 1; i < r.c.size(); ++i) {
            pw *= k;
            r.c[i] *= pw;
        }
        r.trim();
        return r;
    }
    // p(x^k)
    ZPoly compose_power(unsigned long k) const {
        if (is_zero()) return ZPoly();
        std::vector<BigInt> r(c.size() == 0 ? 0 : (c.size() - 1) * k + 1, BigInt(0));
        for (size_t i = 0; i < c.size(); ++i) r[i * k] = c[i];
        return ZPoly(std::move(r));
    }

    Rational eval(const Rational& x) const {
        Rational r = 0;
        for (size_t i = c.size(); i-- > 0;) r = r * x + Rational(c[i]);
        return r;
    }
    BigInt eval(const BigInt& x) const {
        BigInt r = 0;
        for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
        return r;
    }
    IntervalReal eval(const IntervalReal& x) const {
        IntervalReal r = IntervalReal::point(0, x.prec());
        for (size_t i = c.size(); i-- > 0;) r = r * x + Rational(c[i]);
        return r;
    }

    std::string to_string(const std::string& var = "x") const;
    static ZPoly parse(const std::string& s, const std::string& var = "x");
};

struct QPoly {
    std::vector<Rational> c;

    QPoly() = default;
    explicit QPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { trim(); }
    explicit QPoly(const ZPoly& p) {
        c.reserve(p.c.size());
        for (const auto& v : p.c) c.emplace_back(v);
    }
    static QPoly constant(const Rational& v) { return QPoly({v}); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return (int)c.size() - 1; }
    const Rational& lead() const { return c.back(); }
    Rational coeff(int i) const { return (i >= 0 && i < (int)c.size()) ? c[i] : Rational(0); }
    bool operator==(const QPoly& o) const { return c == o.c; }

    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        std::vector<Rational> r(std::max(a.c.size(), b.c.size()), Rational(0));
        for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
        return QPoly(std::move(r));
    }
    friend QPoly operator-(const QPoly& a, const QPoly& b) {
        std::vector<Rational> r(std::max(a.c.size(), b.c.size()), Rational(0));
        for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
        return QPoly(std::move(r));
    }
    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return QPoly();
        std::vector<Rational> r(a.c.size() + b.c.size() - 1, Rational(0));
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
        return QPoly(std::move(r));
    }
    friend QPoly operator*(const QPoly& a, const Rational& k) {
        if (k == 0) return QPoly();
        QPoly r = a;
        for (auto& v : r.c) v *= k;
        return r;
    }
    QPoly operator-() const {
        QPoly r = *this;
        for (auto& v : r.c) v = -v;
        return r;
    }

    QPoly monic() const {
        if (is_zero()) return QPoly();
        return *this * Rational(1) / lead();
    }
    friend QPoly operator/(const QPoly& a, const Rational& k) {
        QPoly r = a;
        for (auto& v : r.c) v /= k;
        return r;
    }

    QPoly derivative() const {
        if (c.size() <= 1) return QPoly();
        std::vector<Rational> r(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * Rational((unsigned long)i);
        return QPoly(std::move(r));
    }

    static void divrem(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
        if (b.is_zero()) throw domain_error("QPoly division by zero");
        r = a;
        q = QPoly();
        q.c.assign(a.c.size(), Rational(0));
        while (!r.is_zero() && r.degree() >= b.degree()) {
            Rational f = r.lead() / b.lead();
            int sh = r.degree() - b.degree();
            q.c[sh] += f;
            for (int i = 0; i <= b.degree(); ++i) r.c[i + sh] -= f * b.c[i];
            r.trim();
        }
        q.trim();
    }

    Rational eval(const Rational& x) const {
        Rational r = 0;
        for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
        return r;
    }
    IntervalReal eval(const IntervalReal& x) const {
        IntervalReal r = IntervalReal::point(0, x.prec());
        for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
        return r;
    }

    // Clear denominators; result = primitive integer polynomial with the
    // same roots, positive leading coefficient.
    ZPoly clear_denominators() const {
        BigInt l = 1;
        for (const auto& v : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
        std::vector<BigInt> zc;
        zc.reserve(c.size());
        for (const auto& v : c) {
            Rational s = v * Rational(l);
            zc.emplace_back(s.get_num());
        }
        return ZPoly(std::move(zc)).primitive();
    }

    std::string to_string(const std::string& var = "x") const;
};

inline QPoly qpoly_gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly q, r;
        QPoly::divrem(a, b, q, r);
        a = b;
        b = r;
    }
    return a.is_zero() ? a : a.monic();
}

inline ZPoly zpoly_gcd(const ZPoly& a, const ZPoly& b) {
    QPoly g = qpoly_gcd(QPoly(a), QPoly(b));
    if (g.is_zero()) return ZPoly();
    ZPoly r = g.clear_denominators();
    // restore the integer content of the gcd
    BigInt ca = a.content(), cb = b.content(), cg;
    mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    return r * cg;
}

inline ZPoly squarefree_part(const ZPoly& p) {
    if (p.degree() <= 0) return p.primitive();
    ZPoly g = zpoly_gcd(p, p.derivative());
    if (g.degree() <= 0) return p.primitive();
    QPoly q, r;
    QPoly::divrem(QPoly(p), QPoly(g), q, r);
    return q.clear_denominators();
}

// Exact division over Z; throws if not divisible.
inline ZPoly zpoly_divexact(const ZPoly& a, const ZPoly& b) {
    QPoly q, r;
    QPoly::divrem(QPoly(a), QPoly(b), q, r);
    if (!r.is_zero()) throw domain_error("zpoly_divexact: not divisible");
    std::vector<BigInt> zc;
    zc.reserve(q.c.size());
    for (const auto& v : q.c) {
        if (!rat_is_integer(v)) throw domain_error("zpoly_divexact: non-integer quotient");
        zc.emplace_back(v.get_num());
    }
    return ZPoly(std::move(zc));
}

// Resultant over Q via the Euclidean algorithm with leading-coefficient
// bookkeeping: res(a,b) = lc(b)^(da-dr) * (-1)^(da*db) * res(b, a mod b).
inline Rational qpoly_resultant(QPoly a, QPoly b) {
    if (a.is_zero() || b.is_zero()) return Rational(0);
    Rational res = 1;
    while (b.degree() > 0) {
        QPoly q, r;
        QPoly::divrem(a, b, q, r);
        if (r.is_zero()) return Rational(0);
        long da = a.degree(), db = b.degree(), dr = r.degree();
        res *= rat_pow(b.lead(), (unsigned long)(da - dr));
        if ((da % 2) && (db % 2)) res = -res;
        a = b;
        b = r;
    }
    // b constant
    res *= rat_pow(b.lead(), (unsigned long)a.degree());
    return res;
}

inline Rational zpoly_resultant(const ZPoly& a, const ZPoly& b) {
    return qpoly_resultant(QPoly(a), QPoly(b));
}

inline unsigned long euler_phi(unsigned long m) {
    unsigned long r = m;
    unsigned long n = m;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            r -= r / p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

// m-th cyclotomic polynomial, by exact division of x^m - 1.
inline ZPoly cyclotomic(unsigned long m) {
    static thread_local std::map<unsigned long, ZPoly> memo;
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    std::vector<BigInt> xm(m + 1, BigInt(0));
    xm[0] = -1;
    xm[m] = 1;
    ZPoly num(std::move(xm));
    for (unsigned long d = 1; d < m; ++d)
        if (m % d == 0) num = zpoly_divexact(num, cyclotomic(d));
    memo[m] = num;
    return num;
}

// ---- text format: "x^3 - 2", integer or num/den coefficients ----

inline std::string ZPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const BigInt& a = coeff(i);
        if (a == 0) continue;
        BigInt mag = a < 0 ? BigInt(-a) : a;
        if (first) {
            if (a < 0) os << "-";
            first = false;
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        if (i == 0 || mag != 1) os << mag.get_str();
        if (i > 0) {
            if (mag != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

inline std::string QPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& a = coeff(i);
        if (a == 0) continue;
        Rational mag = a < 0 ? Rational(-a) : a;
        if (first) {
            if (a < 0) os << "-";
            first = false;
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        if (i == 0 || mag != 1) os << mag.get_str();
        if (i > 0) {
            if (mag != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

namespace detail {

// Shared term parser for "c", "c*x^k", "x^k", "-x", "3/2 x^2" styles.
template <typename Coeff, typename ParseCoeff>
std::vector<Coeff> parse_poly_terms(const std::string& s, const std::string& var,
                                    ParseCoeff parse_coeff) {
    std::vector<Coeff> coeffs;
    auto bump = [&](int k, const Coeff& v) {
        if ((int)coeffs.size() <= k) coeffs.resize(k + 1, Coeff(0));
        coeffs[k] += v;
    };
    size_t i = 0;
    auto skipws = [&] {
        while (i < s.size() && isspace((unsigned char)s[i])) ++i;
    };
    skipws();
    bool any = false;
    while (i < s.size()) {
        int sign = 1;
        skipws();
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            ++i;
            skipws();
        } else if (any) {
            throw input_error("polynomial parse error near '" + s.substr(i) + "'");
        }
        // optional coefficient
        std::string num;
        while (i < s.size() && (isdigit((unsigned char)s[i]) || s[i] == '/')) num += s[i++];
        skipws();
        if (i < s.size() && s[i] == '*') {
            ++i;
            skipws();
        }
        bool has_var = false;
        int expo = 0;
        if (i + var.size() <= s.size() && s.compare(i, var.size(), var) == 0) {
            has_var = true;
            i += var.size();
            expo = 1;
            skipws();
            if (i < s.size() && s[i] == '^') {
                ++i;
                skipws();
                std::string e;
                while (i < s.size() && isdigit((unsigned char)s[i])) e += s[i++];
                if (e.empty()) throw input_error("polynomial parse: missing exponent");
                expo = std::stoi(e);
            }
        }
        if (num.empty() && !has_var)
            throw input_error("polynomial parse error in '" + s + "'");
        Coeff cv = num.empty() ? Coeff(1) : parse_coeff(num);
        if (sign < 0) cv = -cv;
        bump(expo, cv);
        any = true;
        skipws();
    }
    if (!any) throw input_error("empty polynomial");
    return coeffs;
}

}  // namespace detail

inline ZPoly ZPoly::parse(const std::string& s, const std::string& var) {
    auto coeffs = detail::parse_poly_terms<BigInt>(s, var, [](const std::string& t) {
        if (t.find('/') != std::string::npos)
            throw input_error("integer polynomial expected, got rational coefficient: " + t);
        return BigInt(t);
    });
    return ZPoly(std::move(coeffs));
}

inline QPoly qpoly_parse(const std::string& s, const std::string& var = "x") {
    auto coeffs = detail::parse_poly_terms<Rational>(
        s, var, [](const std::string& t) { return parse_rational(t); });
    return QPoly(std::move(coeffs));
}

}  // namespace growthlab
