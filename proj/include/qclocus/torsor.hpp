#pragma once

#include <vector>

#include "qclocus/curve_function.hpp"
#include "qclocus/point.hpp"

namespace qclocus {

/// Point of the Gm-torsor over E attached to O(infinity), presented on one of
/// the two glued charts: (x, y, z) over the affine curve chart, or (t, u, w)
/// over the chart at infinity.  The fibre coordinate never vanishes, and the
/// transition on the overlap is t = -x/y, u = -1/y, w = t z.
class TorsorPoint {
public:
    enum class Chart { Affine, AtInfinity };

    static TorsorPoint affine(const WeierstrassModel& e, TowerElement x, TowerElement y, TowerElement z) {
        if (z.is_zero()) throw ContractError("TorsorPoint: fibre coordinate must be nonzero");
        if (!e.curve_equation(x, y).is_zero())
            throw ContractError("TorsorPoint: base point not on the curve");
        return TorsorPoint(e, Chart::Affine, std::move(x), std::move(y), std::move(z));
    }

    static TorsorPoint at_infinity_chart(const WeierstrassModel& e, TowerElement t, TowerElement u, TowerElement w) {
        if (w.is_zero()) throw ContractError("TorsorPoint: fibre coordinate must be nonzero");
        TowerElement a1(e.a1()), a2(e.a2()), a3(e.a3()), a4(e.a4()), a6(e.a6());
        TowerElement rhs = t.pow(3) + a1 * t * u + a2 * t * t * u + a3 * u * u + a4 * t * u * u + a6 * u.pow(3);
        if (!(u == rhs)) throw ContractError("TorsorPoint: base point not on the chart at infinity");
        return TorsorPoint(e, Chart::AtInfinity, std::move(t), std::move(u), std::move(w));
    }

    /// The base point over infinity: (t, u, w) = (0, 0, 1).
    static TorsorPoint base_point(const WeierstrassModel& e) {
        return TorsorPoint(e, Chart::AtInfinity, TowerElement(Rational(0)), TowerElement(Rational(0)),
                           TowerElement(Rational(1)));
    }

    const WeierstrassModel& model() const { return e_; }
    Chart chart() const { return chart_; }
    const TowerElement& c1() const { return c1_; }
    const TowerElement& c2() const { return c2_; }
    const TowerElement& c3() const { return c3_; }

    bool over_infinity() const { return chart_ == Chart::AtInfinity && c1_.is_zero() && c2_.is_zero(); }

    /// Underlying point on E.
    CurvePoint base() const {
        if (chart_ == Chart::Affine) return CurvePoint(e_, c1_, c2_);
        if (over_infinity()) return CurvePoint::infinity(e_);
        // x = t/u, y = -1/u
        TowerElement uinv = c2_.inverse();
        return CurvePoint(e_, c1_ * uinv, -uinv);
    }

    /// Rewrite on the other chart where the transition is defined.
    TorsorPoint to_affine() const {
        if (chart_ == Chart::Affine) return *this;
        if (over_infinity()) throw ContractError("TorsorPoint: the fibre over infinity has no affine-chart form");
        TowerElement uinv = c2_.inverse();
        TowerElement x = c1_ * uinv, y = -uinv;
        if (c1_.is_zero()) throw ContractError("TorsorPoint: transition w = t z degenerates at t = 0");
        return TorsorPoint(e_, Chart::Affine, x, y, c3_ * c1_.inverse());
    }

    TorsorPoint to_infinity_chart() const {
        if (chart_ == Chart::AtInfinity) return *this;
        if (c2_.is_zero()) throw ContractError("TorsorPoint: transition undefined where y = 0");
        TowerElement yinv = c2_.inverse();
        TowerElement t = -c1_ * yinv, u = -yinv;
        if (t.is_zero()) throw ContractError("TorsorPoint: transition undefined where t = 0");
        return TorsorPoint(e_, Chart::AtInfinity, t, u, t * c3_);
    }

    friend bool operator==(const TorsorPoint& p, const TorsorPoint& q) {
        if (p.over_infinity() || q.over_infinity()) {
            return p.over_infinity() && q.over_infinity() && p.c3_ == q.c3_;
        }
        if (p.chart_ == q.chart_) return p.c1_ == q.c1_ && p.c2_ == q.c2_ && p.c3_ == q.c3_;
        // charts differ away from the infinity fibre: move one over
        const TorsorPoint& aff = p.chart_ == Chart::Affine ? p : q;
        const TorsorPoint& inf = p.chart_ == Chart::Affine ? q : p;
        TorsorPoint conv = inf.to_affine();
        return aff.c1_ == conv.c1_ && aff.c2_ == conv.c2_ && aff.c3_ == conv.c3_;
    }
    friend bool operator!=(const TorsorPoint& p, const TorsorPoint& q) { return !(p == q); }

    std::string str() const {
        std::string tag = chart_ == Chart::Affine ? "xyz" : "tuw";
        return tag + "(" + c1_.str() + ", " + c2_.str() + ", " + c3_.str() + ")";
    }

private:
    TorsorPoint(const WeierstrassModel& e, Chart chart, TowerElement a, TowerElement b, TowerElement c)
        : e_(e), chart_(chart), c1_(std::move(a)), c2_(std::move(b)), c3_(std::move(c)) {}

    WeierstrassModel e_;
    Chart chart_;
    TowerElement c1_, c2_, c3_;
};

/// The section 1 of O(infinity): (x, y) -> (x, y, 1).  The point at infinity
/// itself is reached by TorsorPoint::base_point instead.
inline TorsorPoint f_embed(const CurvePoint& q) {
    if (q.is_infinity())
        throw ContractError("f_embed: use TorsorPoint::base_point for the point at infinity");
    return TorsorPoint::affine(q.model(), q.x(), q.y(), TowerElement(Rational(1)));
}

/// Same section written on the chart at infinity: (t, u) -> (t, u, t).
inline TorsorPoint f_embed_infinity_chart(const WeierstrassModel& e, const TowerElement& t, const TowerElement& u) {
    return TorsorPoint::at_infinity_chart(e, t, u, t);
}

/// The self-map of the torsor lying over multiplication by n and under the
/// (n^2)-power map on the fibres, fixing the base point.  On the affine chart
/// the fibre coordinate is (-1)^(n+1) z^(n^2) / psi_n; over the n-torsion
/// fibres the regular chart-at-infinity form
///   w = (-1)^n (x psi_n^2 - psi_{n-1} psi_{n+1}) / (psi_{2n} / 2 psi_n) z^(n^2)
/// takes over.
inline TorsorPoint beta_s_eval(long n, const TorsorPoint& p) {
    if (n < 1) throw ContractError("beta_s_eval: n must be >= 1");
    const WeierstrassModel& e = p.model();
    long n2 = n * n;

    if (p.over_infinity()) {
        // fibre over the base point: pure (n^2)-power map, base point fixed
        return TorsorPoint::at_infinity_chart(e, TowerElement(Rational(0)), TowerElement(Rational(0)),
                                              p.c3().pow(n2));
    }

    TorsorPoint ap = p.chart() == TorsorPoint::Chart::Affine ? p : p.to_affine();
    const TowerElement &x = ap.c1(), &y = ap.c2(), &z = ap.c3();
    CurvePoint base(e, x, y);
    CurvePoint image = point_mul(n, base);
    DivisionPolynomials divs(e);

    if (!image.is_infinity()) {
        TowerElement psi_n = divs.psi(n).eval(x, y);
        if (psi_n.is_zero()) throw Error("beta_s_eval: psi_n vanished away from n-torsion (internal)");
        TowerElement zn = z.pow(n2) * psi_n.inverse();
        if (n % 2 == 0) zn = -zn;
        return TorsorPoint::affine(e, image.x(), image.y(), zn);
    }

    // n-torsion fibre: evaluate the regular chart-at-infinity coordinate
    TowerElement numer = divs.mul_numerator(n).eval(x);  // x psi_n^2 - psi_{n-1} psi_{n+1}
    TowerElement half_dn = divs.psi2n_over_psin(n).eval(x, y) * Rational(1, 2);
    if (half_dn.is_zero()) throw Error("beta_s_eval: psi_2n/psi_n vanished on the n-torsion fibre (internal)");
    TowerElement w = numer * half_dn.inverse() * z.pow(n2);
    if (n % 2 == 1) w = -w;
    return TorsorPoint::at_infinity_chart(e, TowerElement(Rational(0)), TowerElement(Rational(0)), w);
}

/// Exact check of the tower law beta_m . beta_n = beta_{mn} on sample points.
inline bool beta_s_compose_check(long n, long m, const std::vector<TorsorPoint>& samples) {
    for (const auto& p : samples) {
        TorsorPoint lhs = beta_s_eval(m, beta_s_eval(n, p));
        TorsorPoint rhs = beta_s_eval(static_cast<long>(n * m), p);
        if (lhs != rhs) return false;
    }
    return true;
}

/// Deterministic off-torsion sample points: small rational x, y solved in Q
/// or a quadratic tower, fibre coordinates cycling through small values.
inline std::vector<TorsorPoint> torsor_sample_points(const WeierstrassModel& e, size_t count, long avoid_torsion_n) {
    std::vector<TorsorPoint> out;
    long zs = 0;
    for (long xi = 0; out.size() < count && xi < 4000; ++xi) {
        Rational x(xi % 2 == 0 ? xi / 2 : -(xi + 1) / 2); // 0, -1, 1, -2, 2, ...
        // y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6) = 0
        Rational p_lin = e.a1() * x + e.a3();
        Rational q_neg = -(x.pow(3) + e.a2() * x * x + e.a4() * x + e.a6());
        Rational disc = p_lin * p_lin - Rational(4) * q_neg;
        if (disc.is_zero()) continue; // 2-torsion x
        TowerElement y_val;
        Rational root;
        if (rational_sqrt(disc, &root)) {
            y_val = TowerElement((-p_lin + root) / Rational(2));
        } else {
            auto [num, scale] = rational_to_integer_poly(RatPoly{-disc, Rational(0), Rational(1)});
            (void)scale;
            (void)num;
            RatPoly minpoly = RatPoly{-disc / Rational(4), Rational(0), Rational(1)}; // s^2 = disc/4 -> y = -p/2 + s
            auto tower = NumberTower::make(minpoly.monic(), /*check=*/false);
            // irreducible since disc is not a rational square
            TowerElement s = TowerElement::generator_x(tower);
            y_val = TowerElement(-p_lin / Rational(2)) + s;
        }
        CurvePoint pt(e, TowerElement(x), y_val);
        if (point_mul(avoid_torsion_n, pt).is_infinity()) continue;
        ++zs;
        Rational z(1 + (zs % 3)); // 1, 2, 3 cycling
        out.push_back(TorsorPoint::affine(e, TowerElement(x), y_val, TowerElement(z)));
    }
    if (out.size() < count) throw CapabilityError("torsor_sample_points: not enough sample points found");
    return out;
}

} // namespace qclocus
