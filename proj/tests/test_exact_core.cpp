#include <catch2/catch_amalgamated.hpp>

#include "qclocus/factor.hpp"
#include "qclocus/polynomial.hpp"
#include "qclocus/rational.hpp"
#include "qclocus/tower.hpp"

using namespace qclocus;

TEST_CASE("rational arithmetic is canonical") {
    Rational a(6, -4);
    CHECK(a.num() == -3);
    CHECK(a.den() == 2);
    CHECK(Rational::parse("-37") == Rational(-37));
    CHECK(Rational::parse("1/2") == Rational(1, 2));
    CHECK(Rational::parse("−37") == Rational(-37)); // U+2212 minus
    CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
    CHECK(Rational(8, 9).valuation(Int(3)) == -2);
    CHECK(Rational(8, 9).valuation(Int(2)) == 3);
    CHECK_THROWS_AS(Rational(1, 0), ContractError);
}

TEST_CASE("polynomial division and gcd") {
    RatPoly f = ratpoly_from_ints({-1, 0, 1});      // x^2 - 1
    RatPoly g = ratpoly_from_ints({-1, 1});         // x - 1
    auto [q, r] = divmod(f, g);
    CHECK(r.is_zero());
    CHECK(q == ratpoly_from_ints({1, 1}));
    CHECK(poly_gcd(f, g) == g.monic());
    CHECK(resultant(ratpoly_from_ints({-2, 0, 1}), ratpoly_from_ints({-3, 0, 1})) == Rational(1));
}

TEST_CASE("poly_factor on the stated examples") {
    SECTION("irreducible quadratic x^2 + 3") {
        auto fs = poly_factor(ratpoly_from_ints({3, 0, 1}));
        REQUIRE(fs.size() == 1);
        CHECK(fs[0].first == ratpoly_from_ints({3, 0, 1}));
        CHECK(fs[0].second == 1);
    }
    SECTION("x^3 + 726x + 9317 has the quadratic factor of (11+33*sqrt(-3))/2") {
        auto fs = poly_factor(ratpoly_from_ints({9317, 726, 0, 1}));
        REQUIRE(fs.size() == 2);
        // factors sorted by degree: (x + 11), (x^2 - 11x + 847)
        CHECK(fs[0].first == ratpoly_from_ints({11, 1}));
        RatPoly quad = fs[1].first;
        CHECK(quad == ratpoly_from_ints({847, -11, 1}));
        // independent check: the stated root satisfies the quadratic factor
        auto K = NumberTower::make(ratpoly_from_ints({3, 0, 1})); // Q(sqrt(-3))
        TowerElement s = TowerElement::generator_x(K);
        TowerElement root = (TowerElement(Rational(11)) + Rational(33) * s) * Rational(1, 2);
        CHECK(quad.eval(root).is_zero());
    }
    SECTION("(x-1)(x^2+1) splits") {
        RatPoly p = ratpoly_from_ints({-1, 1}) * ratpoly_from_ints({1, 0, 1});
        auto fs = poly_factor(p);
        REQUIRE(fs.size() == 2);
        CHECK(fs[0].first == ratpoly_from_ints({-1, 1}));
        CHECK(fs[1].first == ratpoly_from_ints({1, 0, 1}));
    }
}

TEST_CASE("factorization reassembles exactly") {
    // includes multiplicities, a non-trivial leading coefficient, and a
    // moderately large product
    std::vector<RatPoly> cases = {
        ratpoly_from_ints({-1, 1}) * ratpoly_from_ints({-1, 1}) * ratpoly_from_ints({1, 0, 1}) * Rational(3, 7),
        ratpoly_from_ints({1, 1, 0, 0, 1}) * ratpoly_from_ints({-1, -1, 0, 0, 0, 1}) * ratpoly_from_ints({3, 0, 1}),
        ratpoly_from_ints({2, 0, 0, 3, 0, 0, 0, 0, 5}),
        ratpoly_from_ints({9317, 726, 0, 1}) * ratpoly_from_ints({9317, 726, 0, 1}),
    };
    for (const auto& p : cases) {
        auto fs = poly_factor(p);
        RatPoly prod = RatPoly::one();
        for (auto& [f, m] : fs)
            for (long i = 0; i < m; ++i) prod = prod * f;
        // equality up to the rational constant p.leading()/prod.leading()
        CHECK(prod * (p.leading() / prod.leading()) == p);
        for (auto& [f, m] : fs) {
            CHECK(f.is_monic());
            CHECK(poly_factor(f).size() == 1);
        }
    }
}

TEST_CASE("zassenhaus handles a degree-12 product with repeated structure") {
    // (x^4 + x^3 + x^2 + x + 1)(x^4 - x^3 + x^2 - x + 1)(x^2 + x + 1)(x^2 - x + 1)
    RatPoly p = ratpoly_from_ints({1, 1, 1, 1, 1}) * ratpoly_from_ints({1, -1, 1, -1, 1}) *
                ratpoly_from_ints({1, 1, 1}) * ratpoly_from_ints({1, -1, 1});
    auto fs = poly_factor(p);
    CHECK(fs.size() == 4);
}

TEST_CASE("tower minimal polynomials") {
    auto K7 = NumberTower::make(ratpoly_from_ints({-7, 0, 1})); // Q(sqrt 7)
    TowerElement t = TowerElement::generator_x(K7);
    TowerElement unit = TowerElement(Rational(8)) + Rational(3) * t; // 8 + 3 sqrt 7
    RatPoly mu = tower_minimal_polynomial(unit);
    CHECK(mu == ratpoly_from_ints({1, -16, 1}));
    CHECK(mu.eval(unit).is_zero());

    CHECK(tower_minimal_polynomial(TowerElement(Rational(5))) == ratpoly_from_ints({-5, 1}));

    auto K3 = NumberTower::make(ratpoly_from_ints({3, 0, 1})); // Q(sqrt -3)
    CHECK(tower_minimal_polynomial(TowerElement::generator_x(K3)) == ratpoly_from_ints({3, 0, 1}));

    CHECK(tower_norm(unit) == Rational(1));
}

TEST_CASE("roots of unity detection") {
    auto K3 = NumberTower::make(ratpoly_from_ints({3, 0, 1}));
    TowerElement s = TowerElement::generator_x(K3);
    TowerElement zeta = (TowerElement(Rational(1)) - s) * Rational(1, 2); // (1 - sqrt(-3))/2
    auto ord = is_root_of_unity(zeta);
    REQUIRE(ord.has_value());
    CHECK(*ord == 6);
    // minimality
    for (long k = 1; k < 6; ++k) CHECK(zeta.pow(k) != TowerElement(Rational(1)));
    CHECK(zeta.pow(6) == TowerElement(Rational(1)));

    auto K7 = NumberTower::make(ratpoly_from_ints({-7, 0, 1}));
    TowerElement unit = TowerElement(Rational(8)) + Rational(3) * TowerElement::generator_x(K7);
    CHECK_FALSE(is_root_of_unity(unit).has_value());

    CHECK(is_root_of_unity(TowerElement(Rational(-1))).value() == 2);
    CHECK_THROWS_AS(is_root_of_unity(TowerElement(Rational(0))), ContractError);
}

TEST_CASE("tower inverses and powers") {
    auto K3 = NumberTower::make(ratpoly_from_ints({3, 0, 1}));
    TowerElement s = TowerElement::generator_x(K3);
    TowerElement a = TowerElement(Rational(2)) + Rational(5) * s;
    CHECK(a * a.inverse() == TowerElement(Rational(1)));
    CHECK(a.pow(3) == a * a * a);
    CHECK(a.pow(-2) == (a * a).inverse());
}

TEST_CASE("roots in towers (norm method)") {
    auto K3 = NumberTower::make(ratpoly_from_ints({3, 0, 1}));
    auto roots = roots_in_x_layer(K3, ratpoly_from_ints({3, 0, 1}));
    REQUIRE(roots.size() == 2);
    for (auto& r : roots) CHECK((r * r) == TowerElement(Rational(-3)));

    // x^2 - 11x + 847 has both roots in Q(sqrt(-3))
    auto roots2 = roots_in_x_layer(K3, ratpoly_from_ints({847, -11, 1}));
    CHECK(roots2.size() == 2);

    // no roots of x^2 - 2 in Q(sqrt(-3))
    CHECK(roots_in_x_layer(K3, ratpoly_from_ints({-2, 0, 1})).empty());

    auto K7 = NumberTower::make(ratpoly_from_ints({-7, 0, 1}));
    auto s7 = sqrt_in_x_layer(K7, TowerElement(Rational(7)));
    REQUIRE(s7.has_value());
    CHECK((*s7) * (*s7) == TowerElement(Rational(7)));
}

TEST_CASE("quadratic layer towers") {
    // Q(sqrt 2, sqrt 3) presented as y^2 - 3 over Q[x]/(x^2-2)
    auto K = NumberTower::make_quadratic(ratpoly_from_ints({-2, 0, 1}), RatPoly(), ratpoly_from_ints({-3}));
    CHECK(K->degree() == 4);
    TowerElement x = TowerElement::generator_x(K);
    TowerElement y = TowerElement::generator_y(K);
    CHECK(y * y == TowerElement(Rational(3)));
    TowerElement a = x * y; // sqrt 6
    CHECK(tower_minimal_polynomial(a) == ratpoly_from_ints({-6, 0, 1}));
    CHECK(a * a.inverse() == TowerElement(Rational(1)));
    // sqrt of 6 exists in the full tower but not in the x-layer
    CHECK_FALSE(sqrt_in_x_layer(K, TowerElement(Rational(6))).has_value());
    auto s6 = sqrt_in_tower(K, TowerElement(Rational(6)));
    REQUIRE(s6.has_value());
    CHECK((*s6) * (*s6) == TowerElement(Rational(6)));
    // quad conjugate flips the sign of y
    CHECK(y.quad_conjugate() == -y);
}

TEST_CASE("embedding elements across towers") {
    auto K3a = NumberTower::make(ratpoly_from_ints({3, 0, 1}));      // generated by sqrt(-3)
    auto K3b = NumberTower::make(ratpoly_from_ints({847, -11, 1}));  // same field, other generator
    TowerElement s = TowerElement::generator_x(K3a);
    auto images = embed_into_tower(s, K3b);
    REQUIRE(images.size() == 2);
    for (auto& im : images) CHECK(im * im == TowerElement(K3b, RatPoly(Rational(-3))));
}
