#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "growthlab/factor.hpp"
#include "growthlab/poly.hpp"

using namespace growthlab;

TEST_CASE("parse and print") {
    ZPoly p = ZPoly::parse("x^3 - 2");
    REQUIRE(p.degree() == 3);
    REQUIRE(p.coeff(0) == -2);
    REQUIRE(p.coeff(3) == 1);
    REQUIRE(p.to_string() == "x^3 - 2");

    ZPoly q = ZPoly::parse("-2*x^2 + x - 17");
    REQUIRE(q.coeff(2) == -2);
    REQUIRE(q.coeff(1) == 1);
    REQUIRE(q.coeff(0) == -17);

    QPoly r = qpoly_parse("1/2 x^2 - 3/4");
    REQUIRE(r.coeff(2) == Rational(1, 2));
    REQUIRE(r.coeff(0) == Rational(-3, 4));

    REQUIRE_THROWS_AS(ZPoly::parse("x^"), input_error);
    REQUIRE_THROWS_AS(ZPoly::parse(""), input_error);
}

TEST_CASE("gcd, squarefree, division") {
    ZPoly a = ZPoly::parse("x^2 - 1");
    ZPoly b = ZPoly::parse("x^2 - 2*x + 1");
    ZPoly g = zpoly_gcd(a, b);
    REQUIRE(g == ZPoly::parse("x - 1"));

    ZPoly sq = ZPoly::parse("x - 1") * ZPoly::parse("x - 1") * ZPoly::parse("x + 2");
    REQUIRE(squarefree_part(sq) == ZPoly::parse("x^2 + x - 2"));

    REQUIRE(zpoly_divexact(a, ZPoly::parse("x + 1")) == ZPoly::parse("x - 1"));
    REQUIRE_THROWS_AS(zpoly_divexact(a, ZPoly::parse("x + 2")), domain_error);
}

TEST_CASE("resultant") {
    // Res(x^2-2, x^2-3) = prod over roots b of x^2-3 of (b^2 - 2) = 1
    REQUIRE(zpoly_resultant(ZPoly::parse("x^2 - 2"), ZPoly::parse("x^2 - 3")) == Rational(1));
    // Res(f, g) with shared root is 0
    ZPoly f = ZPoly::parse("x^2 - 1") * ZPoly::parse("x - 3");
    REQUIRE(zpoly_resultant(f, ZPoly::parse("x - 1")) == Rational(0));
    // discriminant-style check: Res(x^2-x-1, 2x-1) = 2^2 * ((1/2)^2-1/2-1) = -5
    REQUIRE(zpoly_resultant(ZPoly::parse("x^2 - x - 1"), ZPoly::parse("2*x - 1")) == Rational(-5));
}

TEST_CASE("cyclotomic polynomials") {
    REQUIRE(cyclotomic(1) == ZPoly::parse("x - 1"));
    REQUIRE(cyclotomic(2) == ZPoly::parse("x + 1"));
    REQUIRE(cyclotomic(5) == ZPoly::parse("x^4 + x^3 + x^2 + x + 1"));
    REQUIRE(cyclotomic(6) == ZPoly::parse("x^2 - x + 1"));
    REQUIRE(cyclotomic(12) == ZPoly::parse("x^4 - x^2 + 1"));
    REQUIRE(euler_phi(12) == 4);
    REQUIRE(euler_phi(1) == 1);
    REQUIRE((int)cyclotomic(105).degree() == (int)euler_phi(105));
}

TEST_CASE("factorization basics") {
    auto fac = zpoly_factor(ZPoly::parse("x^4 - 1"));
    REQUIRE(fac.size() == 3);

    REQUIRE(zpoly_is_irreducible(ZPoly::parse("x^2 - x - 1")));
    REQUIRE(zpoly_is_irreducible(ZPoly::parse("x^3 - 2")));
    REQUIRE(zpoly_is_irreducible(ZPoly::parse("x^2 + 1")));
    REQUIRE(zpoly_is_irreducible(cyclotomic(5)));
    REQUIRE(zpoly_is_irreducible(cyclotomic(7)));
    REQUIRE_FALSE(zpoly_is_irreducible(ZPoly::parse("x^2 - 1")));

    // x^4 + 4 = (x^2 - 2x + 2)(x^2 + 2x + 2)
    auto f44 = zpoly_factor(ZPoly::parse("x^4 + 4"));
    REQUIRE(f44.size() == 2);
    ZPoly prod = ZPoly::constant(BigInt(1));
    for (const auto& e : f44) {
        REQUIRE(e.multiplicity == 1);
        REQUIRE(e.poly.degree() == 2);
        prod = prod * e.poly;
    }
    REQUIRE(prod == ZPoly::parse("x^4 + 4"));

    // multiplicities
    ZPoly m = ZPoly::parse("x - 1") * ZPoly::parse("x - 1") * ZPoly::parse("x + 2");
    auto fm = zpoly_factor(m);
    REQUIRE(fm.size() == 2);
    for (const auto& e : fm) {
        if (e.poly == ZPoly::parse("x - 1")) REQUIRE(e.multiplicity == 2);
        if (e.poly == ZPoly::parse("x + 2")) REQUIRE(e.multiplicity == 1);
    }
}

TEST_CASE("factor round-trip on random products") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        int nf = 2 + (int)(rng() % 2);
        ZPoly prod = ZPoly::constant(BigInt(1));
        for (int i = 0; i < nf; ++i) {
            int deg = 1 + (int)(rng() % 3);
            std::vector<BigInt> c(deg + 1);
            for (int j = 0; j < deg; ++j) c[j] = BigInt((long)(rng() % 21) - 10);
            c[deg] = BigInt((long)(rng() % 3) + 1);
            ZPoly f{std::move(c)};
            if (f.degree() < 1) continue;
            prod = prod * f;
        }
        if (prod.degree() < 2) continue;
        auto fac = zpoly_factor(prod);
        ZPoly re = ZPoly::constant(prod.content());
        for (const auto& e : fac) {
            REQUIRE(zpoly_is_irreducible(e.poly));
            for (int i = 0; i < e.multiplicity; ++i) re = re * e.poly;
        }
        // sign convention: factors are primitive with positive lead
        if (prod.lead() < 0) re = -re;
        REQUIRE(re == prod);
    }
}

TEST_CASE("larger cyclotomic factorization") {
    // x^12 - 1 splits into the 6 cyclotomics of the divisors of 12
    auto fac = zpoly_factor(ZPoly::parse("x^12 - 1"));
    REQUIRE(fac.size() == 6);
    for (const auto& e : fac) REQUIRE(e.multiplicity == 1);
}
