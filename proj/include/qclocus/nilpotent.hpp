#pragma once

#include "qclocus/intops.hpp"
#include "qclocus/laurent.hpp"

namespace qclocus {

/// Dimensions of the graded pieces of the descending central series of a
/// nilpotent Lie algebra, three steps deep.
struct GradedDims {
    Int d1, d2, d3;
};

/// Dimension of the degree-n graded piece of the free Lie algebra on k
/// generators: (1/n) sum_{m | n} mu(n/m) k^m.
inline Int witt_free_dim(long k, long n) {
    if (k < 1 || n < 1) throw ContractError("witt_free_dim: k, n must be >= 1");
    Int sum = 0;
    for (long m : divisors(n)) {
        Int km;
        mpz_ui_pow_ui(km.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(m));
        sum += moebius(n / m) * km;
    }
    return sum / n;
}

/// True when the dimension vector violates the realizability inequality
/// d3 >= d1 (d2 - 25/54 d1^2 + 1/2 d1 - 1/3): such graded dimensions cannot
/// come from the fundamental group of a smooth complex variety.  When the
/// inequality holds nothing is claimed.
inline bool realizability_obstructed(const GradedDims& d) {
    Rational d1(d.d1), d2(d.d2), d3(d.d3);
    Rational rhs = d1 * (d2 - Rational(25, 54) * d1 * d1 + Rational(1, 2) * d1 - Rational(1, 3));
    return d3 < rhs;
}

/// Graded dimensions of the maximal 2-step nilpotent quotient of a genus-g
/// surface group: (2g, g(2g-1) - 1, 0).
inline GradedDims surface_group_two_step_dims(long g) {
    if (g < 2) throw ContractError("surface_group_two_step_dims: genus must be >= 2");
    return {Int(2 * g), Int(g) * (2 * g - 1) - 1, Int(0)};
}

/// Power-series check of prod_n (1 - t^n)^(-witt(k, n)) = 1/(1 - k t) up to
/// order `order`.
inline bool witt_generating_identity_holds(long k, long order) {
    LaurentSeries<Rational> prod = LaurentSeries<Rational>::monomial(Rational(1), 0, order + 1);
    for (long n = 1; n <= order; ++n) {
        Int w = witt_free_dim(k, n);
        // (1 - t^n)^(-w) up to t^order: repeated multiplication by the
        // geometric series of t^n is exact and cheap at this scale
        LaurentSeries<Rational> base(0, {Rational(1)}, order + 1);
        LaurentSeries<Rational> geom = base - LaurentSeries<Rational>::monomial(Rational(1), n, order + 1);
        LaurentSeries<Rational> inv = geom.inverse();
        for (Int i = 0; i < w; ++i) prod = prod * inv;
    }
    LaurentSeries<Rational> target =
        (LaurentSeries<Rational>(0, {Rational(1)}, order + 1) -
         LaurentSeries<Rational>::monomial(Rational(k), 1, order + 1))
            .inverse();
    return prod == target;
}

} // namespace qclocus
