#pragma once

#include "qclocus/curve_function.hpp"
#include "qclocus/laurent.hpp"
#include "qclocus/point.hpp"

namespace qclocus {

using RatSeries = LaurentSeries<Rational>;
using TowerSeries = LaurentSeries<TowerElement>;

struct InfinityExpansion {
    RatSeries x;         // t^-2 + ...
    RatSeries y;         // -t^-3 + ...
    RatSeries omega_dt;  // 1 + O(t): the invariant differential over dt
};

/// Solve u = t^3 + a1 t u + a2 t^2 u + a3 u^2 + a4 t u^2 + a6 u^3 in the
/// t-adic topology (the chart of the curve at infinity with t = -x/y,
/// u = -1/y), then read off x = t/u, y = -1/u and omega/dt.  All three series
/// are returned with first untracked exponent >= precision.
inline InfinityExpansion laurent_at_infinity(const WeierstrassModel& e, long precision) {
    if (precision < 1) throw ContractError("laurent_at_infinity: precision must be >= 1");
    long work = precision + 5;
    RatSeries t = RatSeries::monomial(Rational(1), 1, work);
    RatSeries u = RatSeries::monomial(Rational(1), 3, work);
    RatSeries a1(e.a1()), a2(e.a2()), a3(e.a3()), a4(e.a4()), a6(e.a6());
    RatSeries t2 = t * t, t3 = t2 * t;
    for (;;) {
        RatSeries u2 = u * u;
        RatSeries next = t3 + a1 * t * u + a2 * t2 * u + a3 * u2 + a4 * t * u2 + a6 * u2 * u;
        next = next.truncate(work);
        if (next == u) break;
        u = next;
    }
    InfinityExpansion out;
    RatSeries uinv = u.inverse();
    out.x = (t * uinv).truncate(precision);
    out.y = (-uinv).truncate(precision);
    RatSeries denom = Rational(2) * out.y + a1 * out.x + a3; // psi_2 along the chart
    out.omega_dt = (out.x.derivative() * denom.inverse()).truncate(precision);
    return out;
}

/// Laurent expansion at infinity of a curve function.
inline RatSeries expand_at_infinity(const CurveFunction& g, const InfinityExpansion& chart) {
    RatSeries va = g.x_part().is_zero() ? RatSeries() : g.x_part().eval(chart.x);
    if (g.y_part().is_zero()) return va;
    return va + chart.y * g.y_part().eval(chart.x);
}

namespace detail {

inline TowerSeries to_tower_series(const RatSeries& s, const TowerPtr& tower) {
    if (s.is_zero_to_precision()) return TowerSeries(s.precision(), {}, s.precision());
    std::vector<TowerElement> coeffs;
    long lead = s.leading_exponent();
    for (long e = lead; e < s.precision(); ++e)
        coeffs.push_back(TowerElement(tower, RatPoly(s.coefficient(e))));
    return TowerSeries(lead, std::move(coeffs), s.precision());
}

} // namespace detail

/// Series coordinates of the translate (x(t), y(t)) + Q, as power series over
/// the coordinate tower of Q.  Q must be affine.
inline std::pair<TowerSeries, TowerSeries> translate_series_by_point(const InfinityExpansion& chart,
                                                                     const CurvePoint& q) {
    const WeierstrassModel& e = q.model();
    const TowerPtr& tower = q.tower();
    TowerSeries xs = detail::to_tower_series(chart.x, tower);
    TowerSeries ys = detail::to_tower_series(chart.y, tower);
    TowerSeries xq(q.x()), yq(q.y());
    TowerSeries lambda = (ys - yq) * (xs - xq).inverse();
    TowerSeries nu = ys - lambda * xs;
    TowerSeries ea1{TowerElement(e.a1())}, ea2{TowerElement(e.a2())}, ea3{TowerElement(e.a3())};
    TowerSeries x3 = lambda * lambda + ea1 * lambda - ea2 - xs - xq;
    TowerSeries y3 = -(lambda + ea1) * x3 - nu - ea3;
    return {x3, y3};
}

/// Expansion of a curve function along the translated series point.
inline TowerSeries expand_translated(const CurveFunction& g, const TowerSeries& x3, const TowerSeries& y3,
                                     const TowerPtr& tower) {
    auto lift = [&](const RatPoly& p) {
        std::vector<TowerElement> cs;
        for (long i = 0; i <= p.degree(); ++i) cs.push_back(TowerElement(tower, RatPoly(p.coeff(static_cast<size_t>(i)))));
        return Poly<TowerElement>(std::move(cs));
    };
    TowerSeries va = g.x_part().is_zero() ? TowerSeries() : lift(g.x_part()).eval(x3);
    if (g.y_part().is_zero()) return va;
    return va + y3 * lift(g.y_part()).eval(x3);
}

} // namespace qclocus
