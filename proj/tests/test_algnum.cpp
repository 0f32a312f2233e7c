#include <catch2/catch_amalgamated.hpp>

#include "growthlab/algnum.hpp"

using namespace growthlab;

namespace {

// Lucas numbers L_n = phi^n + phi'^n, computed from the integer recurrence
// L_0 = 2, L_1 = 1, L_n = L_{n-1} + L_{n-2}: an oracle independent of any
// trace machinery.
BigInt lucas(unsigned long n) {
    BigInt a = 2, b = 1;
    if (n == 0) return a;
    for (unsigned long i = 1; i < n; ++i) {
        BigInt c = a + b;
        a = b;
        b = c;
    }
    return b;
}

AlgebraicNumber golden_ratio() {
    return alg_real_root_above(ZPoly::parse("x^2 - x - 1"), Rational(1));
}

}  // namespace

TEST_CASE("construction and equality") {
    AlgebraicNumber phi = golden_ratio();
    REQUIRE(phi.degree() == 2);
    REQUIRE(phi.is_algebraic_integer());
    REQUIRE(phi.box.is_real);
    // 1.618... bracket
    REQUIRE(phi.box.re.lo_q() > Rational(8, 5));
    REQUIRE(phi.box.re.hi_q() < Rational(17, 10));

    AlgebraicNumber phi2 = alg_root_near(ZPoly::parse("x^2 - x - 1"), Rational(16, 10),
                                         Rational(0));
    REQUIRE(alg_equal(phi, phi2));
    AlgebraicNumber conj = alg_root_near(ZPoly::parse("x^2 - x - 1"), Rational(-6, 10),
                                         Rational(0));
    REQUIRE_FALSE(alg_equal(phi, conj));

    AlgebraicNumber half = AlgebraicNumber::from_rational(Rational(1, 2));
    REQUIRE(half.is_rational());
    REQUIRE(half.as_rational() == Rational(1, 2));
    REQUIRE_FALSE(half.is_algebraic_integer());
}

TEST_CASE("refine_box keeps the selected root") {
    AlgebraicNumber phi = golden_ratio();
    ComplexBox fine = refine_box(phi.minpoly, phi.box, 300);
    REQUIRE(fine.is_real);
    REQUIRE(fine.re.width_q() < Rational(BigInt(1), big_pow(BigInt(2), 280)));
    // still the positive root
    REQUIRE(fine.re.lo_q() > 1);
}

TEST_CASE("power traces match the Lucas oracle") {
    AlgebraicNumber phi = golden_ratio();
    // Tr(phi^n) = phi^n + conj^n = L_n
    for (unsigned long n = 0; n <= 40; ++n)
        REQUIRE(power_trace(phi, n) == Rational(lucas(n)));
    REQUIRE(power_trace(phi, 4) == 7);
    REQUIRE(power_trace(phi, 16) == 2207);
}

TEST_CASE("power traces for non-monic minimal polynomials") {
    // alpha = 3/2: Tr(alpha^n) = (3/2)^n
    AlgebraicNumber a = AlgebraicNumber::from_rational(Rational(3, 2));
    for (unsigned long n = 0; n <= 6; ++n)
        REQUIRE(power_trace(a, n) == rat_pow(Rational(3, 2), n));
    // roots of 2x^2 - 1: +-1/sqrt(2); sum of squares = 1, sum of 4th powers = 1/2
    AlgebraicNumber b = alg_root_near(ZPoly::parse("2x^2 - 1"), Rational(7, 10), Rational(0));
    REQUIRE(power_trace(b, 1) == 0);
    REQUIRE(power_trace(b, 2) == 1);
    REQUIRE(power_trace(b, 4) == Rational(1, 2));
}

TEST_CASE("unit circle root counting") {
    REQUIRE(count_unit_circle_roots(ZPoly::parse("x^2 - x - 1")) == 0);
    REQUIRE(count_unit_circle_roots(ZPoly::parse("x^2 - 2")) == 0);
    REQUIRE(count_unit_circle_roots(cyclotomic(5)) == 4);
    REQUIRE(count_unit_circle_roots(cyclotomic(12)) == 4);
    // Lehmer's polynomial: Salem number, all but two roots on the circle
    ZPoly lehmer = ZPoly::parse("x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1");
    REQUIRE(count_unit_circle_roots(lehmer) == 8);
    // smallest Salem-like quartic: x^4 - 2x^3 - 2x + 1 is reciprocal
    ZPoly q = ZPoly::parse("x^4 - 2x^3 - 2x + 1");
    REQUIRE(q == q.reverse());
    REQUIRE(count_unit_circle_roots(q) == 2);
}

TEST_CASE("Pisot classification") {
    SECTION("golden ratio is Pisot") {
        auto v = classify_pisot(ZPoly::parse("x^2 - x - 1"));
        REQUIRE(v.pisot);
        REQUIRE(v.dominant_root.has_value());
        REQUIRE(v.dominant_root->lo_q() > Rational(8, 5));
        REQUIRE(v.max_other_modulus->hi_q() < 1);
    }
    SECTION("x^2 - 3x + 1 (phi^2) is Pisot") {
        REQUIRE(classify_pisot(ZPoly::parse("x^2 - 3x + 1")).pisot);
    }
    SECTION("plastic number x^3 - x - 1 is Pisot") {
        REQUIRE(classify_pisot(ZPoly::parse("x^3 - x - 1")).pisot);
    }
    SECTION("rational integers") {
        REQUIRE(classify_pisot(ZPoly::parse("x - 4")).pisot);
        REQUIRE_FALSE(classify_pisot(ZPoly::parse("x - 1")).pisot);
        REQUIRE_FALSE(classify_pisot(ZPoly::parse("x + 3")).pisot);
    }
    SECTION("x^3 - 2 is not Pisot (complex conjugates of modulus 2^(1/3) > 1)") {
        auto v = classify_pisot(ZPoly::parse("x^3 - 2"));
        REQUIRE_FALSE(v.pisot);
    }
    SECTION("x^2 - 2 is not Pisot (conjugate -sqrt(2) outside)") {
        REQUIRE_FALSE(classify_pisot(ZPoly::parse("x^2 - 2")).pisot);
    }
    SECTION("Salem witness x^4 - 2x^3 - 2x + 1 fails via exact circle test") {
        auto v = classify_pisot(ZPoly::parse("x^4 - 2x^3 - 2x + 1"));
        REQUIRE_FALSE(v.pisot);
        REQUIRE(v.reason.find("modulus exactly 1") != std::string::npos);
    }
    SECTION("non-monic rejected as non-integer") {
        auto v = classify_pisot(ZPoly::parse("2x^2 - 1"));
        REQUIRE_FALSE(v.pisot);
        REQUIRE(v.reason.find("not an algebraic integer") != std::string::npos);
    }
    SECTION("reducible input is an input error") {
        REQUIRE_THROWS_AS(classify_pisot(ZPoly::parse("x^2 - 1")), input_error);
    }
}

TEST_CASE("roots of unity") {
    AlgebraicNumber i = alg_root_near(ZPoly::parse("x^2 + 1"), Rational(0), Rational(1));
    auto oi = is_root_of_unity(i);
    REQUIRE(oi.has_value());
    REQUIRE(*oi == 4);

    AlgebraicNumber z6 = alg_root_near(cyclotomic(6), Rational(1, 2), Rational(87, 100));
    auto o6 = is_root_of_unity(z6);
    REQUIRE(o6.has_value());
    REQUIRE(*o6 == 6);

    REQUIRE(is_root_of_unity(AlgebraicNumber::from_rational(Rational(1))).value() == 1);
    REQUIRE(is_root_of_unity(AlgebraicNumber::from_rational(Rational(-1))).value() == 2);
    REQUIRE_FALSE(is_root_of_unity(golden_ratio()).has_value());
    REQUIRE_FALSE(is_root_of_unity(AlgebraicNumber::from_rational(Rational(2))).has_value());
    REQUIRE_FALSE(
        is_root_of_unity(alg_root_near(ZPoly::parse("2x^2 - 1"), Rational(7, 10), Rational(0)))
            .has_value());
}

TEST_CASE("algebraic arithmetic") {
    AlgebraicNumber phi = golden_ratio();
    SECTION("powers") {
        // phi^2 has minimal polynomial x^2 - 3x + 1 (roots phi^2, phi'^2)
        AlgebraicNumber p2 = alg_pow(phi, 2);
        REQUIRE(p2.minpoly == ZPoly::parse("x^2 - 3x + 1"));
        REQUIRE(p2.box.re.lo_q() > Rational(5, 2));
        // phi^16: trace must be L_16 = 2207 and it is the large root
        AlgebraicNumber p16 = alg_pow(phi, 16);
        REQUIRE(p16.minpoly == ZPoly::parse("x^2 - 2207x + 1"));
        REQUIRE(p16.box.re.lo_q() > 2206);
    }
    SECTION("sums and products against quadratic-surd oracles") {
        AlgebraicNumber r2 = alg_real_root_above(ZPoly::parse("x^2 - 2"), Rational(0));
        AlgebraicNumber r3 = alg_real_root_above(ZPoly::parse("x^2 - 3"), Rational(0));
        // sqrt2 + sqrt3 is the largest root of x^4 - 10x^2 + 1
        AlgebraicNumber s = alg_add(r2, r3);
        REQUIRE(s.minpoly == ZPoly::parse("x^4 - 10x^2 + 1"));
        REQUIRE(s.box.re.lo_q() > 3);
        // sqrt2 * sqrt3 = sqrt6
        AlgebraicNumber p = alg_mul(r2, r3);
        REQUIRE(p.minpoly == ZPoly::parse("x^2 - 6"));
        REQUIRE(p.box.re.lo_q() > 2);
        // phi + phi' = 1 would need conjugate selection; check phi + (1 - phi) route:
        AlgebraicNumber one = alg_add(phi, alg_mul(AlgebraicNumber::from_rational(Rational(-1)),
                                                   phi));
        REQUIRE(one.is_zero());
    }
    SECTION("inverse") {
        AlgebraicNumber inv = alg_inv(golden_ratio());
        // 1/phi = phi - 1, minimal polynomial x^2 + x - 1, positive root
        REQUIRE(inv.minpoly == ZPoly::parse("x^2 + x - 1"));
        REQUIRE(inv.box.re.lo_q() > Rational(1, 2));
        REQUIRE(inv.box.re.hi_q() < Rational(7, 10));
    }
    SECTION("ratio orders") {
        AlgebraicNumber r2 = alg_real_root_above(ZPoly::parse("x^2 - 2"), Rational(0));
        AlgebraicNumber mr2 = alg_root_near(ZPoly::parse("x^2 - 2"), Rational(-3, 2), Rational(0));
        auto o = ratio_root_of_unity_order(mr2, r2);
        REQUIRE(o.has_value());
        REQUIRE(*o == 2);
        REQUIRE_FALSE(ratio_root_of_unity_order(r2, golden_ratio()).has_value());
    }
}

TEST_CASE("Weil height") {
    // h(p/q) = ln max(|p|, q)
    mpfr_prec_t prec = 160;
    auto close_to_ln = [&](const IntervalReal& got, const Rational& arg) {
        IntervalReal want = interval_ln(IntervalReal::from_rational(arg, 300), 300);
        REQUIRE(got.overlaps(want));
        REQUIRE(got.width_q() < Rational(BigInt(1), big_pow(BigInt(2), 100)));
    };
    close_to_ln(weil_height(AlgebraicNumber::from_rational(Rational(7)), prec), Rational(7));
    close_to_ln(weil_height(AlgebraicNumber::from_rational(Rational(2, 3)), prec), Rational(3));
    close_to_ln(weil_height(AlgebraicNumber::from_rational(Rational(-5, 2)), prec), Rational(5));
    // h(phi) = (1/2) ln phi: compare via exp(2h) in a certified enclosure of phi
    AlgebraicNumber phi = golden_ratio();
    IntervalReal h = weil_height(phi, 200);
    IntervalReal e2h = interval_exp(h + h, 300);
    ComplexBox pb = refine_box(phi.minpoly, phi.box, 300);
    REQUIRE(e2h.overlaps(pb.re));
    // roots of unity have height 0
    AlgebraicNumber z5 = alg_root_near(cyclotomic(5), Rational(3, 10), Rational(95, 100));
    IntervalReal h5 = weil_height(z5, 160);
    REQUIRE(h5.contains(Rational(0)));
    REQUIRE(h5.width_q() < Rational(BigInt(1), big_pow(BigInt(2), 100)));
    // h(2^(1/3)) = (1/3) ln 2
    AlgebraicNumber c = alg_real_root_above(ZPoly::parse("x^3 - 2"), Rational(1));
    IntervalReal hc = weil_height(c, 200);
    IntervalReal e3h = interval_exp(hc + hc + hc, 300);
    REQUIRE(e3h.contains(Rational(2)));
}

TEST_CASE("pseudo-Pisot tuples") {
    AlgebraicNumber phi = golden_ratio();
    SECTION("(phi) alone: conjugate sum 1, B = {phi'} inside the circle") {
        auto v = pseudo_pisot_tuple({phi});
        REQUIRE(v.pseudo_pisot);
        REQUIRE(v.conjugate_sum == 1);
        REQUIRE(v.sum_is_integer);
        REQUIRE(v.b_moduli.size() == 1);
        REQUIRE(v.b_moduli[0].hi_q() < 1);
    }
    SECTION("(phi, phi'): closed tuple, B empty, sum 1") {
        AlgebraicNumber conj =
            alg_root_near(ZPoly::parse("x^2 - x - 1"), Rational(-6, 10), Rational(0));
        auto v = pseudo_pisot_tuple({phi, conj});
        REQUIRE(v.pseudo_pisot);
        REQUIRE(v.conjugate_sum == 1);
        REQUIRE(v.b_moduli.empty());
    }
    SECTION("(sqrt2) fails: conjugate sum 0 is integral but -sqrt2 outside") {
        AlgebraicNumber r2 = alg_real_root_above(ZPoly::parse("x^2 - 2"), Rational(0));
        auto v = pseudo_pisot_tuple({r2});
        REQUIRE_FALSE(v.pseudo_pisot);
        REQUIRE(v.conjugate_sum == 0);
        REQUIRE(v.reason.find("modulus >= 1") != std::string::npos);
    }
    SECTION("(3/2) fails: sum not an integer") {
        auto v = pseudo_pisot_tuple({AlgebraicNumber::from_rational(Rational(3, 2))});
        REQUIRE_FALSE(v.pseudo_pisot);
        REQUIRE_FALSE(v.sum_is_integer);
    }
    SECTION("out-of-tuple conjugate exactly on the circle fails") {
        // Salem quartic: dominant root in the tuple, circle conjugates in B
        AlgebraicNumber salem =
            alg_real_root_above(ZPoly::parse("x^4 - 2x^3 - 2x + 1"), Rational(2));
        auto v = pseudo_pisot_tuple({salem});
        REQUIRE_FALSE(v.pseudo_pisot);
    }
    SECTION("duplicates rejected") {
        REQUIRE_THROWS_AS(pseudo_pisot_tuple({phi, phi}), input_error);
    }
}

TEST_CASE("quadratic Pisot unit check") {
    AlgebraicNumber p2 = alg_real_root_above(ZPoly::parse("x^2 - 3x + 1"), Rational(2));
    auto r = quadratic_pisot_unit_check(p2);
    REQUIRE(r.strict);
    REQUIRE(r.loose);
    // phi itself: x^2 - x - 1 has constant term -1 (conjugate is -1/phi)
    auto rphi = quadratic_pisot_unit_check(golden_ratio());
    REQUIRE_FALSE(rphi.strict);
    REQUIRE(rphi.loose);
    // non-unit Pisot: x^2 - 2x - 2
    AlgebraicNumber nu = alg_real_root_above(ZPoly::parse("x^2 - 2x - 2"), Rational(2));
    auto rnu = quadratic_pisot_unit_check(nu);
    REQUIRE_FALSE(rnu.loose);
}

TEST_CASE("degenerate tuple reduction") {
    AlgebraicNumber r2 = alg_real_root_above(ZPoly::parse("x^2 - 2"), Rational(0));
    AlgebraicNumber mr2 = alg_root_near(ZPoly::parse("x^2 - 2"), Rational(-3, 2), Rational(0));
    AlgebraicNumber phi = golden_ratio();

    SECTION("nondegenerate input passes through") {
        auto red = reduce_degenerate({r2, phi}, {Rational(1), Rational(2)});
        REQUIRE(red.already_nondegenerate);
        REQUIRE(red.h == 1);
        REQUIRE(red.classes.size() == 1);
        REQUIRE(red.classes[0].terms.size() == 2);
    }
    SECTION("(sqrt2, -sqrt2) with equal weights: odd class cancels exactly") {
        auto red = reduce_degenerate({r2, mr2}, {Rational(1), Rational(1)});
        REQUIRE_FALSE(red.already_nondegenerate);
        REQUIRE(red.h == 2);
        REQUIRE(red.classes.size() == 2);
        // even class: coefficient 2, base 2 (= (sqrt2)^2)
        const auto& even = red.classes[0];
        REQUIRE(even.terms.size() == 1);
        REQUIRE(even.terms[0].base.is_rational());
        REQUIRE(even.terms[0].base.as_rational() == 2);
        REQUIRE(even.terms[0].zeta_coeff == QPoly::constant(Rational(2)));
        // odd class: q1*1 + q2*(-1) = 0, term dropped
        REQUIRE(red.classes[1].terms.empty());
    }
    SECTION("(sqrt2, -sqrt2) with unequal weights keeps both classes") {
        auto red = reduce_degenerate({r2, mr2}, {Rational(3), Rational(1)});
        REQUIRE(red.h == 2);
        REQUIRE(red.classes[0].terms.size() == 1);
        REQUIRE(red.classes[0].terms[0].zeta_coeff == QPoly::constant(Rational(4)));
        REQUIRE(red.classes[1].terms.size() == 1);
        REQUIRE(red.classes[1].terms[0].zeta_coeff == QPoly::constant(Rational(2)));
    }
}
