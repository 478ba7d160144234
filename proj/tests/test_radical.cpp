#include <catch2/catch_amalgamated.hpp>

#include "qclocus/radical.hpp"

using namespace qclocus;

TEST_CASE("radical rational part") {
    auto K3 = NumberTower::make(ratpoly_from_ints({3, 0, 1}));  // Q(sqrt -3)
    auto K7 = NumberTower::make(ratpoly_from_ints({-7, 0, 1})); // Q(sqrt 7)

    SECTION("(sqrt -3)^(1/2) = 3^(1/4)") {
        FormalRadical r = FormalRadical::of(TowerElement::generator_x(K3), Rational(1, 2));
        auto part = radical_rational_part(r);
        REQUIRE(part.has_value());
        PrimeExponentMap expected;
        expected.add(Int(3), Rational(1, 4));
        CHECK(*part == expected);
    }
    SECTION("(8 + 3 sqrt7)^(-1/4) is not in Q (x) Q^x") {
        TowerElement unit = TowerElement(Rational(8)) + Rational(3) * TowerElement::generator_x(K7);
        FormalRadical r = FormalRadical::of(unit, Rational(-1, 4));
        CHECK_FALSE(radical_rational_part(r).has_value());
    }
    SECTION("2^(1/3) 3^(-1/24)") {
        FormalRadical r = FormalRadical::of_rational(Rational(2), Rational(1, 3));
        r.multiply(TowerElement(Rational(3)), Rational(-1, 24));
        auto part = radical_rational_part(r);
        REQUIRE(part.has_value());
        PrimeExponentMap expected;
        expected.add(Int(2), Rational(1, 3));
        expected.add(Int(3), Rational(-1, 24));
        CHECK(*part == expected);
        CHECK(radical_valuation(*part, Int(3)) == Rational(-1, 24));
        CHECK(radical_valuation(*part, Int(11)) == Rational(0));
    }
    SECTION("roots of unity contribute nothing") {
        TowerElement zeta = (TowerElement(Rational(1)) - TowerElement::generator_x(K3)) * Rational(1, 2);
        FormalRadical r = FormalRadical::of(zeta, Rational(1, 5));
        auto part = radical_rational_part(r);
        REQUIRE(part.has_value());
        CHECK(part->empty());
    }
    SECTION("signs are torsion") {
        FormalRadical r = FormalRadical::of_rational(Rational(-8), Rational(1, 3));
        auto part = radical_rational_part(r);
        REQUIRE(part.has_value());
        PrimeExponentMap expected;
        expected.add(Int(2), Rational(1));
        CHECK(*part == expected);
    }
    SECTION("zero base rejected") {
        FormalRadical r;
        CHECK_THROWS_AS(r.multiply(TowerElement(Rational(0)), Rational(1, 2)), ContractError);
    }
    SECTION("zero exponent normalises away") {
        FormalRadical r;
        r.multiply(TowerElement(Rational(5)), Rational(0));
        CHECK(r.is_trivial_product());
    }
}

TEST_CASE("radical rational part is stable under rewriting") {
    auto K3 = NumberTower::make(ratpoly_from_ints({3, 0, 1}));
    TowerElement s = TowerElement::generator_x(K3);
    TowerElement zeta6 = (TowerElement(Rational(1)) - s) * Rational(1, 2);

    FormalRadical base = FormalRadical::of(s, Rational(1, 2));
    base.multiply(TowerElement(Rational(6)), Rational(2, 3));
    auto reference = radical_rational_part(base);
    REQUIRE(reference.has_value());

    SECTION("multiplying a base by a root of unity") {
        FormalRadical twisted = FormalRadical::of(s * zeta6, Rational(1, 2));
        twisted.multiply(TowerElement(Rational(6)), Rational(2, 3));
        auto part = radical_rational_part(twisted);
        REQUIRE(part.has_value());
        CHECK(*part == *reference);
    }
    SECTION("replacing (alpha, e) by (alpha^2, e/2)") {
        FormalRadical squared = FormalRadical::of(s * s, Rational(1, 4));
        squared.multiply(TowerElement(Rational(6)), Rational(2, 3));
        auto part = radical_rational_part(squared);
        REQUIRE(part.has_value());
        CHECK(*part == *reference);
    }
    SECTION("membership failure is also stable") {
        auto K7 = NumberTower::make(ratpoly_from_ints({-7, 0, 1}));
        TowerElement unit = TowerElement(Rational(8)) + Rational(3) * TowerElement::generator_x(K7);
        FormalRadical r1 = FormalRadical::of(unit, Rational(-1, 4));
        FormalRadical r2 = FormalRadical::of(unit * unit, Rational(-1, 8));
        CHECK_FALSE(radical_rational_part(r1).has_value());
        CHECK_FALSE(radical_rational_part(r2).has_value());
    }
}

TEST_CASE("radical equality in Q (x) Qbar^x") {
    SECTION("2^(1/2) = 4^(1/4)") {
        FormalRadical a = FormalRadical::of_rational(Rational(2), Rational(1, 2));
        FormalRadical b = FormalRadical::of_rational(Rational(4), Rational(1, 4));
        CHECK(radical_equal(a, b));
    }
    SECTION("(-8)^(1/3) = 2 (the sign is torsion)") {
        FormalRadical a = FormalRadical::of_rational(Rational(-8), Rational(1, 3));
        FormalRadical b = FormalRadical::of_rational(Rational(2), Rational(1));
        CHECK(radical_equal(a, b));
    }
    SECTION("2^(1/2) != 3^(1/2)") {
        FormalRadical a = FormalRadical::of_rational(Rational(2), Rational(1, 2));
        FormalRadical b = FormalRadical::of_rational(Rational(3), Rational(1, 2));
        CHECK_FALSE(radical_equal(a, b));
    }
    SECTION("same irrational value through different towers") {
        auto K3a = NumberTower::make(ratpoly_from_ints({3, 0, 1}));
        auto K3b = NumberTower::make(ratpoly_from_ints({847, -11, 1}));
        TowerElement s1 = TowerElement::generator_x(K3a);
        TowerElement s2 = (Rational(2) * TowerElement::generator_x(K3b) - TowerElement(Rational(11))) * Rational(1, 33);
        CHECK(radical_equal(FormalRadical::of(s1, Rational(1, 3)), FormalRadical::of(s2, Rational(1, 3))));
        CHECK_FALSE(radical_equal(FormalRadical::of(s1, Rational(1, 3)), FormalRadical::of(s2, Rational(2, 3))));
    }
    SECTION("empty products are trivial") {
        CHECK(radical_equal(FormalRadical::one(), FormalRadical::one()));
        CHECK(radical_equal(FormalRadical::of_rational(Rational(2), Rational(1, 2)),
                            FormalRadical::of_rational(Rational(2), Rational(1, 2))));
    }
}
