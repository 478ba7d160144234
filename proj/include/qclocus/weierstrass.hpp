#pragma once

#include <array>
#include <sstream>

#include "qclocus/rational.hpp"
#include "qclocus/tower.hpp"

namespace qclocus {

struct CurveInvariants {
    Rational b2, b4, b6, b8, c4, c6, delta, j;
};

/// Plane cubic y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q with
/// nonzero discriminant.
class WeierstrassModel {
public:
    WeierstrassModel(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6)
        : a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)), a4_(std::move(a4)), a6_(std::move(a6)) {
        if (invariants().delta.is_zero()) throw ContractError("WeierstrassModel: singular model (discriminant 0)");
    }

    static WeierstrassModel short_form(const Rational& A, const Rational& B) {
        return WeierstrassModel(Rational(0), Rational(0), Rational(0), A, B);
    }

    const Rational& a1() const { return a1_; }
    const Rational& a2() const { return a2_; }
    const Rational& a3() const { return a3_; }
    const Rational& a4() const { return a4_; }
    const Rational& a6() const { return a6_; }

    CurveInvariants invariants() const {
        CurveInvariants v;
        v.b2 = a1_ * a1_ + Rational(4) * a2_;
        v.b4 = Rational(2) * a4_ + a1_ * a3_;
        v.b6 = a3_ * a3_ + Rational(4) * a6_;
        v.b8 = a1_ * a1_ * a6_ + Rational(4) * a2_ * a6_ - a1_ * a3_ * a4_ + a2_ * a3_ * a3_ - a4_ * a4_;
        v.c4 = v.b2 * v.b2 - Rational(24) * v.b4;
        v.c6 = -v.b2 * v.b2 * v.b2 + Rational(36) * v.b2 * v.b4 - Rational(216) * v.b6;
        v.delta = -v.b2 * v.b2 * v.b8 - Rational(8) * v.b4.pow(3) - Rational(27) * v.b6 * v.b6 +
                  Rational(9) * v.b2 * v.b4 * v.b6;
        if (!v.delta.is_zero()) v.j = v.c4.pow(3) / v.delta;
        return v;
    }

    bool is_integral() const {
        return a1_.is_integer() && a2_.is_integer() && a3_.is_integer() && a4_.is_integer() && a6_.is_integer();
    }

    friend bool operator==(const WeierstrassModel& a, const WeierstrassModel& b) {
        return a.a1_ == b.a1_ && a.a2_ == b.a2_ && a.a3_ == b.a3_ && a.a4_ == b.a4_ && a.a6_ == b.a6_;
    }
    friend bool operator!=(const WeierstrassModel& a, const WeierstrassModel& b) { return !(a == b); }

    /// Value of F = y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6 at (x, y).
    template <class V>
    V curve_equation(const V& x, const V& y) const {
        return y * y + V(a1_) * x * y + V(a3_) * y - x * x * x - V(a2_) * x * x - V(a4_) * x - V(a6_);
    }

    std::string str() const {
        std::ostringstream os;
        os << "[" << a1_ << "," << a2_ << "," << a3_ << "," << a4_ << "," << a6_ << "]";
        return os.str();
    }

private:
    Rational a1_, a2_, a3_, a4_, a6_;
};

/// Coordinate change x = u^2 x' + r, y = u^3 y' + u^2 s x' + t, u nonzero.
struct ModelTransform {
    Rational u{1}, r{0}, s{0}, t{0};

    static ModelTransform identity() { return {}; }

    bool is_identity() const { return u.is_one() && r.is_zero() && s.is_zero() && t.is_zero(); }

    /// this followed by `next` (applied to the image model).
    ModelTransform then(const ModelTransform& o) const {
        ModelTransform c;
        c.u = u * o.u;
        c.r = r + u * u * o.r;
        c.s = s + u * o.s;
        c.t = t + u * u * s * o.r + u * u * u * o.t;
        return c;
    }

    ModelTransform inverse() const {
        ModelTransform inv;
        inv.u = u.inverse();
        Rational u2 = u * u, u3 = u2 * u;
        inv.r = -r / u2;
        inv.s = -s / u;
        inv.t = (r * s - t) / u3;
        return inv;
    }
};

struct TransformResult {
    WeierstrassModel image;
    // primed quantity = scale * unprimed quantity:
    Rational delta_scale; // u^-12
    Rational omega_scale; // u
    // psi_n picks up u^-(n^2-1); see psi_scale().
    Rational u;

    Rational psi_scale(long n) const { return u.pow(-(n * n - 1)); }
};

inline TransformResult apply_transform(const WeierstrassModel& e, const ModelTransform& T) {
    if (T.u.is_zero()) throw ContractError("apply_transform: u = 0");
    const Rational &u = T.u, &r = T.r, &s = T.s, &t = T.t;
    Rational u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
    Rational a1 = (e.a1() + Rational(2) * s) / u;
    Rational a2 = (e.a2() - s * e.a1() + Rational(3) * r - s * s) / u2;
    Rational a3 = (e.a3() + r * e.a1() + Rational(2) * t) / u3;
    Rational a4 = (e.a4() - s * e.a3() + Rational(2) * r * e.a2() - (t + r * s) * e.a1() + Rational(3) * r * r -
                   Rational(2) * s * t) /
                  u4;
    Rational a6 = (e.a6() + r * e.a4() + r * r * e.a2() + r * r * r - t * e.a3() - t * t - r * t * e.a1()) / u6;
    return TransformResult{WeierstrassModel(a1, a2, a3, a4, a6), u.pow(-12), u, u};
}

/// Affine point map attached to a transform: (x, y) on E to the image model.
template <class V>
std::pair<V, V> transform_point(const ModelTransform& T, const V& x, const V& y) {
    V u2 = V(T.u * T.u), u3 = V(T.u * T.u * T.u);
    V xr = x - V(T.r);
    V xp = xr * u2.inverse();
    V yp = (y - V(T.s) * xr - V(T.t)) * u3.inverse();
    return {xp, yp};
}

inline std::pair<Rational, Rational> transform_point(const ModelTransform& T, const Rational& x, const Rational& y) {
    Rational u2 = T.u * T.u, u3 = u2 * T.u;
    Rational xr = x - T.r;
    return {xr / u2, (y - T.s * xr - T.t) / u3};
}

} // namespace qclocus
