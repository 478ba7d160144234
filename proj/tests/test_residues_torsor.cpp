#include <catch2/catch_amalgamated.hpp>

#include "qclocus/residues.hpp"
#include "qclocus/torsion.hpp"
#include "qclocus/torsor.hpp"

using namespace qclocus;

namespace {
const WeierstrassModel curve_8712u5() {
    return WeierstrassModel::short_form(Rational(726), Rational(9317));
}
const WeierstrassModel curve_49a3() {
    return WeierstrassModel(Rational(1), Rational(-1), Rational(0), Rational(-37), Rational(-78));
}
const WeierstrassModel curve_49a3_short() {
    return WeierstrassModel::short_form(Rational(-595), Rational(-5586));
}

CurvePoint golden_Q_8712() {
    auto K = NumberTower::make(ratpoly_from_ints({847, -11, 1}), false);
    return CurvePoint(curve_8712u5(), TowerElement::generator_x(K), TowerElement(Rational(0)));
}

CurvePoint golden_Q_49_short() {
    auto K = NumberTower::make(ratpoly_from_ints({-399, -14, 1}), false);
    return CurvePoint(curve_49a3_short(), TowerElement::generator_x(K), TowerElement(Rational(0)));
}
} // namespace

TEST_CASE("residues at torsion match the golden closed forms") {
    SECTION("8712.u5: Res_Q(psi_2^-1 omega) = (1/(2 3^2 11^2 sqrt(-3))) (1-sqrt(-3))/2") {
        CurvePoint q = golden_Q_8712();
        TowerElement res = residue_at_torsion(curve_8712u5(), q, 2);
        // sqrt(-3) = (2 x - 11)/33 in this tower
        TowerElement s = (Rational(2) * q.x() - TowerElement(Rational(11))) * Rational(1, 33);
        CHECK(s * s == TowerElement(Rational(-3)));
        TowerElement expected = (TowerElement(Rational(1)) - s) * (Rational(4356) * s).inverse();
        CHECK(res == expected);
    }
    SECTION("49.a3 short model: residue = 1/(2^5 7 (8+3 sqrt7))") {
        CurvePoint q = golden_Q_49_short();
        TowerElement res = residue_at_torsion(curve_49a3_short(), q, 2);
        TowerElement s7 = (q.x() - TowerElement(Rational(7))) * Rational(1, 8); // sqrt 7
        CHECK(s7 * s7 == TowerElement(Rational(7)));
        TowerElement unit = TowerElement(Rational(8)) + Rational(3) * s7;
        TowerElement expected = (Rational(224) * unit).inverse();
        CHECK(res == expected);
    }
    SECTION("y^2 = x^3 - x at (0,0): 1/(2(3x^2 - 1)) = -1/2") {
        WeierstrassModel e = WeierstrassModel::short_form(Rational(-1), Rational(0));
        CurvePoint q(e, Rational(0), Rational(0));
        CHECK(residue_at_torsion(e, q, 2) == TowerElement(Rational(-1, 2)));
    }
    SECTION("preconditions") {
        WeierstrassModel e = WeierstrassModel::short_form(Rational(-1), Rational(0));
        CurvePoint q(e, Rational(0), Rational(0));
        CHECK_THROWS_AS(residue_at_torsion(e, q, 3), ContractError); // not 3-torsion
    }
}

TEST_CASE("series oracle agrees with the closed form") {
    SECTION("golden points") {
        CurvePoint q1 = golden_Q_8712();
        CHECK(residue_oracle_series(curve_8712u5(), q1, 2, 8) == residue_at_torsion(curve_8712u5(), q1, 2));
        CurvePoint q2 = golden_Q_49_short();
        CHECK(residue_oracle_series(curve_49a3_short(), q2, 2, 8) == residue_at_torsion(curve_49a3_short(), q2, 2));
    }
    SECTION("rational torsion of higher order, general Weierstrass form") {
        // y^2 + y = x^3 - x^2 has rational 5-torsion (0, 0)
        WeierstrassModel e(Rational(0), Rational(-1), Rational(1), Rational(0), Rational(0));
        CurvePoint q(e, Rational(0), Rational(0));
        REQUIRE(certified_order(q, 6).value() == 5);
        CHECK(residue_oracle_series(e, q, 5, 30) == residue_at_torsion(e, q, 5));
        // n = 10 (a proper multiple of the order) also works
        CHECK(residue_oracle_series(e, q, 10, 104) == residue_at_torsion(e, q, 10));
    }
    SECTION("order 6 on y^2 = x^3 + 1") {
        WeierstrassModel e = WeierstrassModel::short_form(Rational(0), Rational(1));
        CurvePoint q(e, Rational(2), Rational(3));
        REQUIRE(certified_order(q, 6).value() == 6);
        CHECK(residue_oracle_series(e, q, 6, 40) == residue_at_torsion(e, q, 6));
    }
    SECTION("insufficient precision is rejected") {
        CurvePoint q = golden_Q_8712();
        CHECK_THROWS_AS(residue_oracle_series(curve_8712u5(), q, 2, 5), ContractError);
    }
}

TEST_CASE("stable heights of the golden points") {
    SECTION("8712.u5: rational part 2^(1/3) 3^(-1/24)") {
        HstValue h = hst_of_point(curve_8712u5(), golden_Q_8712(), 2);
        REQUIRE(h.rational_part.has_value());
        PrimeExponentMap expected;
        expected.add(Int(2), Rational(1, 3));
        expected.add(Int(3), Rational(-1, 24));
        CHECK(*h.rational_part == expected);
    }
    SECTION("8712.u5 rational 2-torsion (-11, 0) is also in Q (x) Q^x") {
        CurvePoint q(curve_8712u5(), Rational(-11), Rational(0));
        HstValue h = hst_of_point(curve_8712u5(), q, 2);
        REQUIRE(h.rational_part.has_value());
        PrimeExponentMap expected;
        expected.add(Int(2), Rational(1, 3));
        expected.add(Int(3), Rational(1, 12));
        CHECK(*h.rational_part == expected);
    }
    SECTION("49.a3: (8 + 3 sqrt7)^(-1/4) lies outside Q (x) Q^x") {
        HstValue h = hst_of_point(curve_49a3_short(), golden_Q_49_short(), 2);
        CHECK_FALSE(h.rational_part.has_value());
    }
    SECTION("well-definedness: any multiple of the order gives an equal radical") {
        HstValue h2 = hst_of_point(curve_8712u5(), golden_Q_8712(), 2);
        for (long k : {2L, 3L}) {
            HstValue hk = hst_of_point(curve_8712u5(), golden_Q_8712(), 2 * k);
            CHECK(radical_equal(h2.radical, hk.radical));
        }
        HstValue g2 = hst_of_point(curve_49a3_short(), golden_Q_49_short(), 2);
        for (long k : {2L, 3L}) {
            HstValue gk = hst_of_point(curve_49a3_short(), golden_Q_49_short(), 2 * k);
            CHECK(radical_equal(g2.radical, gk.radical));
        }
    }
}

TEST_CASE("kernel-function route to the stable height") {
    auto e = curve_8712u5();
    DivisionPolynomials divs(e);
    SECTION("multiplication by 2: g = -psi_2/2") {
        KernelFunction g{divs.psi(2), CurveFunction::constant(e, Rational(-2))};
        HstValue h = hst_via_kernel_function(e, g, 4, golden_Q_8712());
        HstValue ref = hst_of_point(e, golden_Q_8712(), 2);
        CHECK(radical_equal(h.radical, ref.radical));
        REQUIRE(h.rational_part.has_value());
        CHECK(*h.rational_part == *ref.rational_part);
    }
    SECTION("multiplication by 3 on a curve with rational 3-torsion") {
        WeierstrassModel e1 = WeierstrassModel::short_form(Rational(0), Rational(1));
        CurvePoint q(e1, Rational(0), Rational(1));
        REQUIRE(certified_order(q, 3).value() == 3);
        DivisionPolynomials d1(e1);
        KernelFunction g{d1.psi(3), CurveFunction::constant(e1, Rational(3))};
        HstValue h = hst_via_kernel_function(e1, g, 9, q);
        HstValue ref = hst_of_point(e1, q, 3);
        CHECK(radical_equal(h.radical, ref.radical));
    }
    SECTION("wrong normalisation is an input error") {
        KernelFunction bad{divs.psi(2), CurveFunction::constant(e, Rational(-4))};
        CHECK_THROWS_AS(hst_via_kernel_function(e, bad, 4, golden_Q_8712()), ContractError);
    }
}

TEST_CASE("residue compatibility identity") {
    CHECK(residue_compatibility_check(curve_8712u5(), golden_Q_8712(), 2, 2));
    CHECK(residue_compatibility_check(curve_8712u5(), golden_Q_8712(), 2, 3));
    CHECK(residue_compatibility_check(curve_49a3_short(), golden_Q_49_short(), 2, 3));
    CHECK(residue_compatibility_check(curve_8712u5(), golden_Q_8712(), 2, 1)); // m = 1 trivial
    // order-5 rational point
    WeierstrassModel e(Rational(0), Rational(-1), Rational(1), Rational(0), Rational(0));
    CurvePoint q(e, Rational(0), Rational(0));
    CHECK(residue_compatibility_check(e, q, 5, 2));
}

TEST_CASE("stable height is model independent") {
    SECTION("identity transform") {
        CHECK(hst_invariance_check(curve_8712u5(), ModelTransform::identity(), golden_Q_8712(), 2));
    }
    SECTION("minimal vs short model for 49.a3") {
        auto K7 = NumberTower::make(ratpoly_from_ints({-24, -4, 1}), false); // x^2-4x-24: roots 2 +- 2 sqrt7
        TowerElement x = TowerElement::generator_x(K7);
        TowerElement s7 = (x - TowerElement(Rational(2))) * Rational(1, 2); // sqrt 7
        TowerElement y = TowerElement(Rational(-1)) - s7;
        CurvePoint q(curve_49a3(), x, y);
        ModelTransform T{Rational(1, 2), Rational(1, 4), Rational(-1, 2), Rational(-1, 8)};
        REQUIRE(apply_transform(curve_49a3(), T).image == curve_49a3_short());
        CHECK(hst_invariance_check(curve_49a3(), T, q, 2));
    }
    SECTION("u = 3 rescaling of 8712.u5") {
        ModelTransform T{Rational(3), Rational(0), Rational(0), Rational(0)};
        CHECK(hst_invariance_check(curve_8712u5(), T, golden_Q_8712(), 2));
    }
    SECTION("randomized transforms with small u, r, s, t") {
        std::vector<ModelTransform> ts = {
            {Rational(-1), Rational(1), Rational(0), Rational(2)},
            {Rational(2), Rational(-1), Rational(1), Rational(0)},
            {Rational(1, 2), Rational(2), Rational(-1), Rational(1)},
            {Rational(-2), Rational(0), Rational(2), Rational(-1)},
        };
        for (const auto& T : ts) {
            CHECK(hst_invariance_check(curve_8712u5(), T, golden_Q_8712(), 2));
            CHECK(hst_invariance_check(curve_49a3_short(), T, golden_Q_49_short(), 2));
        }
    }
}

TEST_CASE("torsor points and the embedding") {
    auto e = curve_8712u5();
    SECTION("f embeds as (x, y, 1)") {
        CurvePoint q = golden_Q_8712();
        TorsorPoint p = f_embed(q);
        CHECK(p.chart() == TorsorPoint::Chart::Affine);
        CHECK(p.c1() == q.x());
        CHECK(p.c2() == q.y());
        CHECK(p.c3() == TowerElement(Rational(1)));
        CHECK_THROWS_AS(f_embed(CurvePoint::infinity(e)), ContractError);
    }
    SECTION("transition w = t z holds on the overlap") {
        // a point with x and y nonzero so both charts apply:
        // x = 1, y^2 = 1 + 726 + 9317 = 10044
        auto K = NumberTower::make(ratpoly_from_ints({-10044, 0, 1}), false);
        TowerElement y = TowerElement::generator_x(K);
        CurvePoint q(e, TowerElement(Rational(1)), y);
        TorsorPoint aff = f_embed(q);
        TorsorPoint inf = aff.to_infinity_chart();
        // w = t * z with z = 1
        CHECK(inf.c3() == inf.c1());
        // and f written on the chart at infinity is (t, u) -> (t, u, t)
        TorsorPoint direct = f_embed_infinity_chart(e, inf.c1(), inf.c2());
        CHECK(inf == direct);
        CHECK(aff == inf.to_affine());
    }
    SECTION("fibre coordinate must not vanish") {
        CHECK_THROWS_AS(TorsorPoint::affine(e, TowerElement(Rational(-11)), TowerElement(Rational(0)),
                                            TowerElement(Rational(0))),
                        ContractError);
    }
}

TEST_CASE("the torsor self-maps") {
    auto e = curve_8712u5();
    SECTION("the base point is fixed") {
        TorsorPoint inf = TorsorPoint::base_point(e);
        for (long n : {1L, 2L, 3L, 5L}) CHECK(beta_s_eval(n, inf) == inf);
    }
    SECTION("value over 2-torsion equals the residue form (0, 0, -2 Res)") {
        CurvePoint q = golden_Q_8712();
        TorsorPoint image = beta_s_eval(2, f_embed(q));
        CHECK(image.over_infinity());
        TowerElement expected_w = Rational(-2) * residue_at_torsion(e, q, 2);
        CHECK(image.c3() == expected_w);
    }
    SECTION("fibre scaling: beta_n(x, y, lambda z) = lambda^(n^2) beta_n(x, y, z) in the fibre") {
        auto samples = torsor_sample_points(e, 3, 6);
        for (const auto& p : samples) {
            TorsorPoint scaled = TorsorPoint::affine(e, p.c1(), p.c2(), p.c3() * Rational(5));
            for (long n : {2L, 3L}) {
                TorsorPoint b1 = beta_s_eval(n, p);
                TorsorPoint b2 = beta_s_eval(n, scaled);
                TowerElement ratio = b2.c3() * b1.c3().inverse();
                CHECK(ratio == TowerElement(Rational(5).pow(n * n)));
            }
        }
    }
    SECTION("beta_1 is the identity") {
        auto samples = torsor_sample_points(e, 2, 2);
        for (const auto& p : samples) CHECK(beta_s_eval(1, p) == p);
    }
    SECTION("composition law on sample points") {
        auto samples46 = torsor_sample_points(e, 5, 12); // avoid 4- and 6-torsion fibres (12 covers both)
        CHECK(beta_s_compose_check(2, 2, samples46));
        CHECK(beta_s_compose_check(2, 3, samples46));
        CHECK(beta_s_compose_check(3, 2, samples46));
        // and on the general-form curve
        auto samples2 = torsor_sample_points(curve_49a3(), 4, 12);
        CHECK(beta_s_compose_check(2, 2, samples2));
        CHECK(beta_s_compose_check(3, 2, samples2));
    }
    SECTION("charts agree on the overlap") {
        auto samples = torsor_sample_points(e, 3, 6);
        for (const auto& p : samples) {
            if (p.c1().is_zero() || p.c2().is_zero()) continue; // transition needs x, y nonzero
            TorsorPoint other_chart = p.to_infinity_chart();
            for (long n : {2L, 3L}) CHECK(beta_s_eval(n, p) == beta_s_eval(n, other_chart));
        }
    }
    SECTION("first two coordinates agree with point multiplication") {
        auto samples = torsor_sample_points(e, 3, 6);
        for (const auto& p : samples) {
            for (long n : {2L, 3L}) {
                TorsorPoint img = beta_s_eval(n, p);
                CurvePoint expected = point_mul(n, p.base());
                CHECK(img.base() == expected);
            }
        }
    }
}
