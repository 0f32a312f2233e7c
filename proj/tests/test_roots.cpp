#include <catch2/catch_amalgamated.hpp>

#include "growthlab/roots.hpp"

using namespace growthlab;

namespace {

// Rational enclosure of sqrt(v) of width < 2^-bits, by integer square roots
// of scaled values: an oracle independent of the isolation machinery.
std::pair<Rational, Rational> sqrt_bracket(const Rational& v, unsigned bits) {
    BigInt scale = big_pow(BigInt(2), 2 * bits);
    BigInt num = v.get_num() * scale, den = v.get_den();
    // floor(sqrt(num/den)) at the scaled level
    BigInt t = num * den;  // sqrt(num/den) = sqrt(num*den)/den
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), t.get_mpz_t());
    Rational lo(r, den * big_pow(BigInt(2), bits));
    Rational hi(r + 1, den * big_pow(BigInt(2), bits));
    return {lo, hi};
}

}  // namespace

TEST_CASE("quadratic with two real roots: x^2 - x - 1") {
    auto boxes = isolate_roots(ZPoly::parse("x^2 - x - 1"), 200);
    REQUIRE(boxes.size() == 2);
    REQUIRE(boxes[0].is_real);
    REQUIRE(boxes[1].is_real);
    // oracle: roots are (1 +- sqrt5)/2
    auto [lo5, hi5] = sqrt_bracket(Rational(5), 220);
    Rational philo = (1 + lo5) / 2, phihi = (1 + hi5) / 2;
    Rational conjlo = (1 - hi5) / 2, conjhi = (1 - lo5) / 2;
    REQUIRE(boxes[1].re.lo_q() <= phihi);
    REQUIRE(boxes[1].re.hi_q() >= philo);
    REQUIRE(boxes[0].re.lo_q() <= conjhi);
    REQUIRE(boxes[0].re.hi_q() >= conjlo);
    // certified width
    REQUIRE(boxes[0].re.width_q() < Rational(BigInt(1), big_pow(BigInt(2), 190)));
}

TEST_CASE("x^2 - 2 against the integer-sqrt oracle") {
    auto boxes = isolate_roots(ZPoly::parse("x^2 - 2"), 256);
    REQUIRE(boxes.size() == 2);
    auto [lo, hi] = sqrt_bracket(Rational(2), 280);
    REQUIRE(boxes[1].re.lo_q() < hi);
    REQUIRE(boxes[1].re.hi_q() > lo);
    REQUIRE(boxes[0].re.lo_q() < Rational(-lo));
    REQUIRE(boxes[0].re.hi_q() > Rational(-hi));
}

TEST_CASE("x^3 - 2: one real root, conjugate pair of equal modulus") {
    auto boxes = isolate_roots(ZPoly::parse("x^3 - 2"), 200);
    REQUIRE(boxes.size() == 3);
    int real_count = 0;
    for (const auto& b : boxes) real_count += b.is_real ? 1 : 0;
    REQUIRE(real_count == 1);
    // all three moduli equal 2^(1/3); oracle via cube: modulus^3 must contain 2
    for (const auto& b : boxes) {
        IntervalReal m = b.modulus();
        IntervalReal cube = m * m * m;
        REQUIRE(cube.contains(Rational(2)));
    }
    // the complex pair is conjugate: boxes sorted by (re, im)
    const ComplexBox *c1 = nullptr, *c2 = nullptr;
    for (const auto& b : boxes) {
        if (b.is_real) continue;
        (c1 ? c2 : c1) = &b;
    }
    REQUIRE(c1->re.overlaps(c2->re));
    REQUIRE(c1->im.overlaps(-c2->im));
}

TEST_CASE("purely complex roots: x^2 + 1") {
    auto boxes = isolate_roots(ZPoly::parse("x^2 + 1"), 128);
    REQUIRE(boxes.size() == 2);
    REQUIRE_FALSE(boxes[0].is_real);
    REQUIRE(boxes[0].re.contains(Rational(0)));
    REQUIRE(boxes[0].im.contains(Rational(-1)));
    REQUIRE(boxes[1].im.contains(Rational(1)));
}

TEST_CASE("repeated roots are collapsed via the squarefree part") {
    // (x - 1)^2 (x + 2)
    ZPoly p = ZPoly::parse("x - 1") * ZPoly::parse("x - 1") * ZPoly::parse("x + 2");
    auto boxes = isolate_roots(p, 128);
    REQUIRE(boxes.size() == 2);
    REQUIRE(boxes[0].re.contains(Rational(-2)));
    REQUIRE(boxes[1].re.contains(Rational(1)));
}

TEST_CASE("rational roots land exactly") {
    auto boxes = isolate_roots(ZPoly::parse("6x^2 - 5x + 1"), 160);  // roots 1/3, 1/2
    REQUIRE(boxes.size() == 2);
    REQUIRE(boxes[0].re.contains(Rational(1, 3)));
    REQUIRE(boxes[1].re.contains(Rational(1, 2)));
}

TEST_CASE("isolating boxes are pairwise disjoint and certified") {
    // wilkinson-style stress: close real roots
    ZPoly p = ZPoly::parse("x - 1");
    for (int k = 2; k <= 8; ++k) p = p * (ZPoly::x() * BigInt(7) - ZPoly::constant(BigInt(7 * k + 1)));
    auto boxes = isolate_roots(p, 160);
    REQUIRE(boxes.size() == 8);
    for (size_t i = 0; i < boxes.size(); ++i)
        for (size_t j = i + 1; j < boxes.size(); ++j) {
            bool disjoint = !boxes[i].re.overlaps(boxes[j].re) || !boxes[i].im.overlaps(boxes[j].im);
            REQUIRE(disjoint);
        }
    // each box contains its known rational root (k + 1/7 for k = 2..8, plus 1)
    REQUIRE(boxes[0].re.contains(Rational(1)));
    for (int k = 2; k <= 8; ++k) REQUIRE(boxes[k - 1].re.contains(Rational(7 * k + 1, 7)));
}

TEST_CASE("real root extraction") {
    auto roots = isolate_real_roots(ZPoly::parse("x^3 - 2"), 160);
    REQUIRE(roots.size() == 1);
    IntervalReal cube = roots[0] * roots[0] * roots[0];
    REQUIRE(cube.contains(Rational(2)));
    REQUIRE(isolate_real_roots(ZPoly::parse("x^2 + 1"), 96).empty());
}

TEST_CASE("deterministic output") {
    ZPoly p = ZPoly::parse("x^5 - x^3 + 2x - 7");
    auto a = isolate_roots(p, 128);
    auto b = isolate_roots(p, 128);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].re.lo_q() == b[i].re.lo_q());
        REQUIRE(a[i].im.hi_q() == b[i].im.hi_q());
        REQUIRE(a[i].is_real == b[i].is_real);
    }
}

TEST_CASE("degenerate inputs") {
    REQUIRE_THROWS_AS(isolate_roots(ZPoly::constant(BigInt(3)), 64), input_error);
    auto lin = isolate_roots(ZPoly::parse("2x - 3"), 64);
    REQUIRE(lin.size() == 1);
    REQUIRE(lin[0].re.contains(Rational(3, 2)));
    REQUIRE(lin[0].is_real);
}
