#pragma once

#include <optional>
#include <sstream>

#include "qclocus/tower.hpp"
#include "qclocus/weierstrass.hpp"

namespace qclocus {

/// Point on a Weierstrass model with coordinates in a number tower (or the
/// distinguished point at infinity).  Affine coordinates are checked against
/// the curve equation exactly at construction.
class CurvePoint {
public:
    static CurvePoint infinity(const WeierstrassModel& e) { return CurvePoint(e); }

    CurvePoint(const WeierstrassModel& e, TowerElement x, TowerElement y)
        : e_(e), inf_(false), x_(std::move(x)), y_(std::move(y)) {
        auto [xx, yy] = TowerElement::harmonize(x_, y_);
        x_ = xx;
        y_ = yy;
        if (!e_.curve_equation(x_, y_).is_zero())
            throw ContractError("CurvePoint: coordinates do not satisfy the curve equation");
    }

    CurvePoint(const WeierstrassModel& e, const Rational& x, const Rational& y)
        : CurvePoint(e, TowerElement(x), TowerElement(y)) {}

    const WeierstrassModel& model() const { return e_; }
    bool is_infinity() const { return inf_; }

    const TowerElement& x() const {
        require_affine();
        return x_;
    }
    const TowerElement& y() const {
        require_affine();
        return y_;
    }

    const TowerPtr& tower() const {
        require_affine();
        return x_.tower();
    }

    CurvePoint negate() const {
        if (inf_) return *this;
        TowerElement ny = -y_ - TowerElement(e_.a1()) * x_ - TowerElement(e_.a3());
        return CurvePoint(e_, x_, ny);
    }

    friend bool operator==(const CurvePoint& p, const CurvePoint& q) {
        if (p.inf_ || q.inf_) return p.inf_ && q.inf_;
        return p.x_ == q.x_ && p.y_ == q.y_;
    }
    friend bool operator!=(const CurvePoint& p, const CurvePoint& q) { return !(p == q); }

    std::string str() const {
        if (inf_) return "O";
        std::ostringstream os;
        os << "(" << x_.str() << ", " << y_.str() << ")";
        return os.str();
    }

private:
    explicit CurvePoint(const WeierstrassModel& e) : e_(e), inf_(true) {}
    void require_affine() const {
        if (inf_) throw ContractError("CurvePoint: the point at infinity has no affine coordinates");
    }

    WeierstrassModel e_;
    bool inf_;
    TowerElement x_, y_;
};

inline CurvePoint point_add(const CurvePoint& p, const CurvePoint& q) {
    if (p.model() != q.model()) throw ContractError("point_add: points on different models");
    if (p.is_infinity()) return q;
    if (q.is_infinity()) return p;
    const WeierstrassModel& e = p.model();
    auto [x1, x2] = TowerElement::harmonize(p.x(), q.x());
    auto [y1, y2] = TowerElement::harmonize(p.y(), q.y());

    TowerElement lambda;
    if (x1 == x2) {
        // q = -p?
        TowerElement neg_y = -y2 - TowerElement(e.a1()) * x2 - TowerElement(e.a3());
        if (y1 == neg_y) return CurvePoint::infinity(e);
        // doubling
        TowerElement num = Rational(3) * x1 * x1 + Rational(2) * e.a2() * x1 + TowerElement(e.a4()) -
                           TowerElement(e.a1()) * y1;
        TowerElement den = Rational(2) * y1 + TowerElement(e.a1()) * x1 + TowerElement(e.a3());
        lambda = num * den.inverse();
    } else {
        lambda = (y2 - y1) * (x2 - x1).inverse();
    }
    TowerElement nu = y1 - lambda * x1;
    TowerElement x3 = lambda * lambda + TowerElement(e.a1()) * lambda - TowerElement(e.a2()) - x1 - x2;
    TowerElement y3 = -(lambda + TowerElement(e.a1())) * x3 - nu - TowerElement(e.a3());
    return CurvePoint(e, x3, y3);
}

inline CurvePoint point_mul(long n, const CurvePoint& p) {
    if (n == 0 || p.is_infinity()) return CurvePoint::infinity(p.model());
    CurvePoint base = n < 0 ? p.negate() : p;
    unsigned long k = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    CurvePoint acc = CurvePoint::infinity(p.model());
    int top = 63;
    while (top >= 0 && !((k >> top) & 1)) --top;
    for (int bit = top; bit >= 0; --bit) {
        acc = point_add(acc, acc);
        if ((k >> bit) & 1) acc = point_add(acc, base);
    }
    return acc;
}

/// Exact order of a torsion point within the bound: the least n with nP = O.
inline std::optional<long> certified_order(const CurvePoint& p, long n_max) {
    if (p.is_infinity()) return 1;
    for (long n = 2; n <= n_max; ++n)
        if (point_mul(n, p).is_infinity()) return n;
    return std::nullopt;
}

} // namespace qclocus
