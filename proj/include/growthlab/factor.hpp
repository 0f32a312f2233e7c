#pragma once

#include <random>
#include <vector>

#include "growthlab/poly.hpp"

namespace growthlab {
namespace modp {

// Polynomials over Z/m, dense, coefficients normalized into [0, m).
using MPoly = std::vector<BigInt>;

inline void mtrim(MPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int mdeg(const MPoly& a) { return (int)a.size() - 1; }

inline MPoly from_zpoly(const ZPoly& p, const BigInt& m) {
    MPoly r(p.c.size());
    for (size_t i = 0; i < p.c.size(); ++i) {
        mpz_mod(r[i].get_mpz_t(), p.c[i].get_mpz_t(), m.get_mpz_t());
    }
    mtrim(r);
    return r;
}

// lift with symmetric representatives in (-m/2, m/2]
inline ZPoly to_zpoly_symmetric(const MPoly& a, const BigInt& m) {
    std::vector<BigInt> c(a.size());
    BigInt half = m / 2;
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] > half ? BigInt(a[i] - m) : a[i];
    return ZPoly(std::move(c));
}

inline MPoly madd(const MPoly& a, const MPoly& b, const BigInt& m) {
    MPoly r(std::max(a.size(), b.size()), BigInt(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    for (auto& v : r) mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    mtrim(r);
    return r;
}
inline MPoly msub(const MPoly& a, const MPoly& b, const BigInt& m) {
    MPoly r(std::max(a.size(), b.size()), BigInt(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    for (auto& v : r) mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    mtrim(r);
    return r;
}
inline MPoly mmul(const MPoly& a, const MPoly& b, const BigInt& m) {
    if (a.empty() || b.empty()) return {};
    MPoly r(a.size() + b.size() - 1, BigInt(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    for (auto& v : r) mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    mtrim(r);
    return r;
}
inline MPoly mscale(const MPoly& a, const BigInt& k, const BigInt& m) {
    MPoly r = a;
    for (auto& v : r) {
        v *= k;
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    }
    mtrim(r);
    return r;
}

inline BigInt minv(const BigInt& a, const BigInt& m) {
    BigInt r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw domain_error("modular inverse does not exist");
    return r;
}

// division with remainder; lc(b) must be invertible mod m
inline void mdivrem(const MPoly& a, const MPoly& b, const BigInt& m, MPoly& q, MPoly& r) {
    if (b.empty()) throw domain_error("mod-poly division by zero");
    BigInt il = minv(b.back(), m);
    r = a;
    q.assign(a.size(), BigInt(0));
    while (mdeg(r) >= mdeg(b)) {
        BigInt f = r.back() * il;
        mpz_mod(f.get_mpz_t(), f.get_mpz_t(), m.get_mpz_t());
        int sh = mdeg(r) - mdeg(b);
        q[sh] = f;
        for (int i = 0; i <= mdeg(b); ++i) {
            r[i + sh] -= f * b[i];
            mpz_mod(r[i + sh].get_mpz_t(), r[i + sh].get_mpz_t(), m.get_mpz_t());
        }
        mtrim(r);
    }
    mtrim(q);
}
inline MPoly mmod(const MPoly& a, const MPoly& b, const BigInt& m) {
    MPoly q, r;
    mdivrem(a, b, m, q, r);
    return r;
}

inline MPoly mmonic(const MPoly& a, const BigInt& m) {
    if (a.empty()) return a;
    return mscale(a, minv(a.back(), m), m);
}

// gcd mod a prime
inline MPoly mgcd(MPoly a, MPoly b, const BigInt& p) {
    while (!b.empty()) {
        MPoly r = mmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? a : mmonic(a, p);
}

inline MPoly mpowmod(MPoly base, BigInt e, const MPoly& f, const BigInt& p) {
    MPoly r{BigInt(1)};
    base = mmod(base, f, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mmod(mmul(r, base, p), f, p);
        base = mmod(mmul(base, base, p), f, p);
        e >>= 1;
    }
    return r;
}

inline MPoly mderiv(const MPoly& a, const BigInt& m) {
    if (a.size() <= 1) return {};
    MPoly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) {
        r[i - 1] = a[i] * BigInt((unsigned long)i);
        mpz_mod(r[i - 1].get_mpz_t(), r[i - 1].get_mpz_t(), m.get_mpz_t());
    }
    mtrim(r);
    return r;
}

// ---- factorization of a squarefree monic polynomial mod an odd prime ----

struct DDFPart {
    MPoly product;  // product of all irreducible factors of this degree
    int degree;
};

inline std::vector<DDFPart> distinct_degree(const MPoly& f, const BigInt& p) {
    std::vector<DDFPart> out;
    MPoly v = f;
    MPoly h{BigInt(0), BigInt(1)};  // x
    int d = 0;
    while (mdeg(v) > 0) {
        ++d;
        if (2 * d > mdeg(v)) {
            out.push_back({v, mdeg(v)});
            break;
        }
        h = mpowmod(h, p, v, p);  // x^(p^d) mod v
        MPoly hx = msub(h, MPoly{BigInt(0), BigInt(1)}, p);
        MPoly g = mgcd(v, hx, p);
        if (mdeg(g) > 0) {
            out.push_back({g, d});
            MPoly q, r;
            mdivrem(v, g, p, q, r);
            v = mmonic(q, p);
            h = mmod(h, v, p);
        }
    }
    return out;
}

// Cantor-Zassenhaus equal-degree splitting (p odd). Deterministic seed.
inline void equal_degree(const MPoly& f, int d, const BigInt& p, std::mt19937_64& rng,
                         std::vector<MPoly>& out) {
    int n = mdeg(f);
    if (n == d) {
        out.push_back(mmonic(f, p));
        return;
    }
    BigInt e = (big_pow(p, (unsigned long)d) - 1) / 2;
    for (;;) {
        MPoly a(n);
        for (int i = 0; i < n; ++i) {
            BigInt v((unsigned long)(rng() >> 1));
            mpz_mod(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
            a[i] = v;
        }
        mtrim(a);
        if (a.empty()) continue;
        MPoly g = mgcd(f, a, p);
        if (mdeg(g) > 0 && mdeg(g) < n) {
            equal_degree(g, d, p, rng, out);
            MPoly q, r;
            mdivrem(f, g, p, q, r);
            equal_degree(mmonic(q, p), d, p, rng, out);
            return;
        }
        MPoly b = mpowmod(a, e, f, p);
        b = msub(b, MPoly{BigInt(1)}, p);
        g = mgcd(f, b, p);
        if (mdeg(g) > 0 && mdeg(g) < n) {
            equal_degree(g, d, p, rng, out);
            MPoly q, r;
            mdivrem(f, g, p, q, r);
            equal_degree(mmonic(q, p), d, p, rng, out);
            return;
        }
    }
}

inline std::vector<MPoly> factor_mod_p(const MPoly& f, const BigInt& p) {
    std::vector<MPoly> out;
    std::mt19937_64 rng(0x5eed5eedULL);
    for (const auto& part : distinct_degree(mmonic(f, p), p))
        equal_degree(part.product, part.degree, p, rng, out);
    return out;
}

// ---- Hensel lifting ----

// One quadratic step: given f = g*h (mod m), s*g + t*h = 1 (mod m), g monic,
// produce the same data mod m^2.
inline void hensel_step(const ZPoly& f, const BigInt& m, MPoly& g, MPoly& h, MPoly& s, MPoly& t) {
    BigInt m2 = m * m;
    MPoly fm = from_zpoly(f, m2);
    MPoly e = msub(fm, mmul(g, h, m2), m2);
    MPoly q, r;
    mdivrem(mmul(s, e, m2), h, m2, q, r);
    MPoly gs = madd(g, madd(mmul(t, e, m2), mmul(q, g, m2), m2), m2);
    MPoly hs = madd(h, r, m2);
    MPoly b = msub(madd(mmul(s, gs, m2), mmul(t, hs, m2), m2), MPoly{BigInt(1)}, m2);
    MPoly c, d;
    mdivrem(mmul(s, b, m2), hs, m2, c, d);
    MPoly ss = msub(s, d, m2);
    MPoly ts = msub(t, madd(mmul(t, b, m2), mmul(c, gs, m2), m2), m2);
    g = gs; h = hs; s = ss; t = ts;
}

// Extended Euclid mod prime p: s*a + t*b = 1.
inline void mbezout(const MPoly& a, const MPoly& b, const BigInt& p, MPoly& s, MPoly& t) {
    MPoly r0 = a, r1 = b;
    MPoly s0{BigInt(1)}, s1{}, t0{}, t1{BigInt(1)};
    while (!r1.empty()) {
        MPoly q, r;
        mdivrem(r0, r1, p, q, r);
        MPoly s2 = msub(s0, mmul(q, s1, p), p);
        MPoly t2 = msub(t0, mmul(q, t1, p), p);
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (mdeg(r0) != 0) throw domain_error("mbezout: inputs not coprime");
    BigInt inv = minv(r0[0], p);
    s = mscale(s0, inv, p);
    t = mscale(t0, inv, p);
}

// Lift the factorization f = lc * prod(factors) (mod p) to mod p^(2^iters),
// returning the lifted monic factors and the final modulus.
inline void hensel_lift_list(const ZPoly& f, const BigInt& p, int iters,
                             std::vector<MPoly>& factors, BigInt& modulus) {
    if (factors.size() == 1) {
        for (int i = 0; i < iters; ++i) modulus = modulus * modulus;
        factors[0] = mmonic(from_zpoly(f, modulus), modulus);
        return;
    }
    size_t half = factors.size() / 2;
    MPoly g{BigInt(1)}, h{BigInt(1)};
    for (size_t i = 0; i < half; ++i) g = mmul(g, factors[i], p);
    for (size_t i = half; i < factors.size(); ++i) h = mmul(h, factors[i], p);
    // put the leading coefficient with h
    BigInt lc;
    mpz_mod(lc.get_mpz_t(), f.lead().get_mpz_t(), p.get_mpz_t());
    h = mscale(h, lc, p);
    MPoly s, t;
    mbezout(g, h, p, s, t);
    BigInt m = p;
    for (int i = 0; i < iters; ++i) {
        hensel_step(f, m, g, h, s, t);
        m = m * m;
    }
    // recurse on each half with its lifted product as the target
    std::vector<MPoly> left(factors.begin(), factors.begin() + half);
    std::vector<MPoly> right(factors.begin() + half, factors.end());
    BigInt ml = p, mr = p;
    hensel_lift_list(to_zpoly_symmetric(g, m), p, iters, left, ml);
    hensel_lift_list(to_zpoly_symmetric(h, m), p, iters, right, mr);
    factors.clear();
    factors.insert(factors.end(), left.begin(), left.end());
    factors.insert(factors.end(), right.begin(), right.end());
    modulus = m;
}

}  // namespace modp

// Landau-Mignotte style bound on the coefficients of any factor of f.
inline BigInt factor_coeff_bound(const ZPoly& f) {
    BigInt norm2 = 0;
    for (const auto& v : f.c) norm2 += v * v;
    BigInt s = sqrt(norm2) + 1;
    BigInt lead = f.lead() < 0 ? BigInt(-f.lead()) : f.lead();
    return (s * lead) << (unsigned)(f.degree() + 1);
}

// Irreducible factors of a primitive squarefree polynomial (Zassenhaus).
inline std::vector<ZPoly> factor_squarefree_primitive(ZPoly f) {
    std::vector<ZPoly> out;
    if (f.degree() <= 0) return out;
    if (f.degree() == 1) {
        out.push_back(f);
        return out;
    }
    // pick an odd prime keeping f squarefree, minimizing the modular factor count
    BigInt best_p = 0;
    std::vector<modp::MPoly> best_factors;
    int tried = 0;
    for (BigInt p = 3; tried < 4; mpz_nextprime(p.get_mpz_t(), p.get_mpz_t())) {
        if (f.lead() % p == 0) continue;
        modp::MPoly fp = modp::from_zpoly(f, p);
        if (modp::mdeg(fp) != f.degree()) continue;
        modp::MPoly g = modp::mgcd(fp, modp::mderiv(fp, p), p);
        if (modp::mdeg(g) != 0) continue;
        auto fac = modp::factor_mod_p(fp, p);
        ++tried;
        if (best_factors.empty() || fac.size() < best_factors.size()) {
            best_p = p;
            best_factors = std::move(fac);
        }
        if (best_factors.size() == 1) break;
    }
    if (best_factors.size() == 1) {
        out.push_back(f);
        return out;
    }
    // lift beyond twice the factor coefficient bound
    BigInt bound = factor_coeff_bound(f) * 2;
    int iters = 0;
    BigInt m = best_p;
    while (m <= bound) {
        m = m * m;
        ++iters;
    }
    BigInt modulus = best_p;
    modp::hensel_lift_list(f, best_p, iters, best_factors, modulus);

    // subset recombination
    std::vector<modp::MPoly> avail = best_factors;
    ZPoly rem = f;
    for (size_t take = 1; !avail.empty() && take <= avail.size(); ) {
        bool found = false;
        if (2 * take > avail.size()) {
            // remaining product is irreducible
            break;
        }
        std::vector<size_t> idx(take);
        for (size_t i = 0; i < take; ++i) idx[i] = i;
        for (;;) {
            modp::MPoly prod{BigInt(1)};
            BigInt lc;
            mpz_mod(lc.get_mpz_t(), rem.lead().get_mpz_t(), modulus.get_mpz_t());
            prod = modp::mscale(prod, lc, modulus);
            for (size_t i : idx) prod = modp::mmul(prod, avail[i], modulus);
            ZPoly cand = modp::to_zpoly_symmetric(prod, modulus).primitive();
            bool divides = false;
            if (cand.degree() >= 1) {
                QPoly q, r;
                QPoly::divrem(QPoly(rem), QPoly(cand), q, r);
                if (r.is_zero()) {
                    out.push_back(cand);
                    rem = zpoly_divexact(rem, cand);
                    std::vector<modp::MPoly> na;
                    for (size_t i = 0, j = 0; i < avail.size(); ++i) {
                        if (j < idx.size() && idx[j] == i) { ++j; continue; }
                        na.push_back(avail[i]);
                    }
                    avail = std::move(na);
                    divides = true;
                }
            }
            if (divides) { found = true; break; }
            // next combination
            long pos = (long)take - 1;
            while (pos >= 0 && idx[pos] == avail.size() - take + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (size_t i = pos + 1; i < take; ++i) idx[i] = idx[i - 1] + 1;
        }
        if (!found) ++take;
    }
    if (rem.degree() >= 1) out.push_back(rem.primitive());
    return out;
}

struct ZFactor {
    ZPoly poly;
    int multiplicity;
};

// Full factorization of a nonzero integer polynomial into content-free
// irreducible parts with multiplicities (content dropped).
inline std::vector<ZFactor> zpoly_factor(const ZPoly& f0) {
    if (f0.is_zero()) throw domain_error("factor of zero polynomial");
    std::vector<ZFactor> out;
    ZPoly f = f0.primitive();
    // strip trailing x^k
    int xmult = 0;
    while (!f.c.empty() && f.c.front() == 0) {
        f.c.erase(f.c.begin());
        ++xmult;
    }
    if (xmult > 0) out.push_back({ZPoly::x(), xmult});
    if (f.degree() >= 1) {
        ZPoly sf = squarefree_part(f);
        for (const auto& g : factor_squarefree_primitive(sf)) {
            int mult = 0;
            ZPoly rem = f;
            for (;;) {
                QPoly q, r;
                QPoly::divrem(QPoly(rem), QPoly(g), q, r);
                if (!r.is_zero()) break;
                rem = zpoly_divexact(rem, g);
                ++mult;
            }
            out.push_back({g, mult});
        }
    }
    return out;
}

inline bool zpoly_is_irreducible(const ZPoly& f) {
    ZPoly p = f.primitive();
    if (p.degree() <= 0) return false;
    if (p.degree() == 1) return true;
    if (p.c.front() == 0) return false;
    ZPoly sf = squarefree_part(p);
    if (sf.degree() != p.degree()) return false;
    return factor_squarefree_primitive(sf).size() == 1;
}

}  // namespace growthlab
