#pragma once

#include <optional>

#include "qclocus/expansion.hpp"
#include "qclocus/point.hpp"
#include "qclocus/radical.hpp"
#include "qclocus/torsor.hpp"

namespace qclocus {

/// Residue at Q of g^{-1} omega for a curve function g with a simple zero at
/// Q, via the on-curve identity dg/omega = g_x F_y - g_y F_x (from
/// F_x dx + F_y dy = 0 and omega = dx / F_y).
inline TowerElement residue_of_inverse(const WeierstrassModel& e, const CurveFunction& g, const CurvePoint& q) {
    const TowerElement &x = q.x(), &y = q.y();
    TowerElement gx = g.partial_x().eval(x, y);
    TowerElement gy = g.partial_y().eval(x, y);
    TowerElement fy = curve_Fy(e).eval(x, y);
    TowerElement fx = curve_Fx(e).eval(x, y);
    TowerElement den = gx * fy - gy * fx;
    if (den.is_zero()) throw ContractError("residue_of_inverse: zero of g at Q is not simple");
    return den.inverse();
}

/// Res_Q(psi_n^{-1} omega) for a nonzero n-torsion point Q.
inline TowerElement residue_at_torsion(const WeierstrassModel& e, const CurvePoint& q, long n) {
    if (q.is_infinity()) throw ContractError("residue_at_torsion: Q must be affine");
    if (n < 1 || !point_mul(n, q).is_infinity())
        throw ContractError("residue_at_torsion: Q is not n-torsion");
    DivisionPolynomials divs(e);
    return residue_of_inverse(e, divs.psi(n), q);
}

/// Independent series oracle for the same residue: expand psi_n along the
/// translate of the infinity chart by Q and read the t^{-1} coefficient of
/// (psi_n . tau_Q)^{-1} (omega/dt).
inline TowerElement residue_oracle_series(const WeierstrassModel& e, const CurvePoint& q, long n, long precision) {
    if (q.is_infinity()) throw ContractError("residue_oracle_series: Q must be affine");
    if (n < 1 || !point_mul(n, q).is_infinity())
        throw ContractError("residue_oracle_series: Q is not n-torsion");
    if (precision < n * n + 2) throw ContractError("residue_oracle_series: precision must be >= n^2 + 2");
    auto chart = laurent_at_infinity(e, precision);
    auto [x3, y3] = translate_series_by_point(chart, q);
    DivisionPolynomials divs(e);
    TowerSeries shifted = expand_translated(divs.psi(n), x3, y3, q.tower());
    if (shifted.is_zero_to_precision() || shifted.leading_exponent() != 1)
        throw PrecisionError("residue_oracle_series: translated psi_n does not have a simple zero");
    TowerSeries omega = detail::to_tower_series(chart.omega_dt, q.tower());
    TowerSeries integrand = shifted.inverse() * omega;
    return integrand.coefficient(-1);
}

/// The stable height of a nonzero torsion point, as a formal radical
/// ((-1)^{n+1} n Res_Q(psi_n^{-1} omega))^{1/n^2} * Delta^{1/12}, together
/// with its expansion in Q (x) Q^x when membership holds.
struct HstValue {
    FormalRadical radical;
    std::optional<PrimeExponentMap> rational_part;
    TowerElement alpha; // (-1)^{n+1} n * residue
    long n;             // the multiple of the order that was used
};

inline HstValue hst_of_point(const WeierstrassModel& e, const CurvePoint& q, long n) {
    TowerElement res = residue_at_torsion(e, q, n);
    TowerElement alpha = res * Rational(n % 2 == 0 ? -n : n);
    FormalRadical radical = FormalRadical::of(alpha, Rational(1, Int(n) * Int(n)));
    radical.multiply(TowerElement(e.invariants().delta), Rational(1, 12));
    HstValue out{std::move(radical), std::nullopt, std::move(alpha), n};
    out.rational_part = radical_rational_part(out.radical);
    return out;
}

/// Kernel-function route: g spans the divisor ker(phi) - d*infinity for an
/// isogeny phi of degree d and is normalised so its expansion at infinity is
/// t^{1-d} + higher order.  Supplied as a ratio of curve functions.
struct KernelFunction {
    CurveFunction numerator;
    CurveFunction denominator; // nonzero constant allowed; must not vanish at Q
};

inline HstValue hst_via_kernel_function(const WeierstrassModel& e, const KernelFunction& g, long d,
                                        const CurvePoint& q) {
    if (d < 1) throw ContractError("hst_via_kernel_function: degree must be >= 1");
    if (q.is_infinity()) throw ContractError("hst_via_kernel_function: Q must be affine");
    // normalisation check: leading Laurent term must be exactly t^{1-d}
    auto chart = laurent_at_infinity(e, 4);
    RatSeries num_series = expand_at_infinity(g.numerator, chart);
    RatSeries den_series = expand_at_infinity(g.denominator, chart);
    RatSeries gs = num_series * den_series.inverse();
    if (gs.is_zero_to_precision() || gs.leading_exponent() != 1 - d || !(gs.leading_coefficient() == Rational(1)))
        throw ContractError("hst_via_kernel_function: kernel function is not normalised to t^{1-d}");

    const TowerElement &x = q.x(), &y = q.y();
    if (!g.numerator.eval(x, y).is_zero())
        throw ContractError("hst_via_kernel_function: Q is not in the kernel divisor of g");
    TowerElement den_at_q = g.denominator.eval(x, y);
    if (den_at_q.is_zero()) throw ContractError("hst_via_kernel_function: denominator vanishes at Q");
    // Res_Q(g^{-1} omega) for g = num/den with num(Q) = 0 simple:
    TowerElement res = residue_of_inverse(e, g.numerator, q) * den_at_q;

    FormalRadical radical = FormalRadical::of(res, Rational(1, d));
    radical.multiply(TowerElement(e.invariants().delta), Rational(1, 12));
    HstValue out{std::move(radical), std::nullopt, std::move(res), d};
    out.rational_part = radical_rational_part(out.radical);
    return out;
}

/// Exact check of mn Res_Q(psi_mn^{-1} omega) = (-1)^{m+1} (n Res_Q(psi_n^{-1} omega))^{m^2}.
inline bool residue_compatibility_check(const WeierstrassModel& e, const CurvePoint& q, long n, long m) {
    if (m < 1 || n < 1) throw ContractError("residue_compatibility_check: n, m must be >= 1");
    TowerElement lhs = residue_at_torsion(e, q, n * m) * Rational(n * m);
    TowerElement rhs = (residue_at_torsion(e, q, n) * Rational(n)).pow(Int(m) * Int(m));
    if (m % 2 == 0) rhs = -rhs;
    return lhs == rhs;
}

/// Model invariance: the stable height computed on E at Q agrees with the one
/// computed on the transformed model at the transformed point.
inline bool hst_invariance_check(const WeierstrassModel& e, const ModelTransform& T, const CurvePoint& q, long n) {
    HstValue here = hst_of_point(e, q, n);
    auto res = apply_transform(e, T);
    auto [xp, yp] = transform_point(T, q.x(), q.y());
    CurvePoint qp(res.image, xp, yp);
    HstValue there = hst_of_point(res.image, qp, n);
    return radical_equal(here.radical, there.radical);
}

} // namespace qclocus
