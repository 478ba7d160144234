#pragma once

#include <algorithm>
#include <vector>

#include "qclocus/curve_function.hpp"
#include "qclocus/factor.hpp"
#include "qclocus/point.hpp"

namespace qclocus {

struct TorsionPoint {
    CurvePoint point;
    long order;
    TowerPtr tower;
};

namespace torsion_detail {

/// Deterministic ordering: by order, then tower base polynomial, then
/// coordinates.
inline bool coords_less(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

inline bool poly_less(const RatPoly& a, const RatPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (long i = a.degree(); i >= 0; --i) {
        const Rational &ca = a.coeff(static_cast<size_t>(i)), &cb = b.coeff(static_cast<size_t>(i));
        if (!(ca == cb)) return ca < cb;
    }
    return false;
}

inline bool torsion_less(const TorsionPoint& p, const TorsionPoint& q) {
    if (p.order != q.order) return p.order < q.order;
    if (!(p.tower->base_poly() == q.tower->base_poly())) return poly_less(p.tower->base_poly(), q.tower->base_poly());
    if (p.tower->has_quadratic_layer() != q.tower->has_quadratic_layer())
        return !p.tower->has_quadratic_layer();
    return coords_less(p.point.x().coordinates(), q.point.x().coordinates()) ||
           (p.point.x() == q.point.x() && coords_less(p.point.y().coordinates(), q.point.y().coordinates()));
}

} // namespace torsion_detail

/// All points of exact order n <= n_max whose coordinate tower has total
/// degree <= degree_max. For each irreducible factor h of the exact-order
/// x-polynomial with deg h <= degree_max, the x-coordinates enumerated are
/// all roots of h in Q[x]/(h), and the y-coordinates either live there too
/// or in one quadratic layer on top (counted with degree 2 deg h).
inline std::vector<TorsionPoint> torsion_enumerate(const WeierstrassModel& e, long n_max, long degree_max) {
    if (n_max < 2 || degree_max < 1) throw ContractError("torsion_enumerate: bounds must satisfy n_max >= 2, degree_max >= 1");
    DivisionPolynomials divs(e);
    std::vector<TorsionPoint> out;

    for (long n = 2; n <= n_max; ++n) {
        RatPoly gn = divs.exact_order_x_poly(n);
        if (gn.degree() == 0) continue;
        for (auto& [h, mult] : poly_factor(gn)) {
            if (h.degree() > degree_max) continue;
            TowerPtr k0 = NumberTower::make(h, /*check=*/false);
            // y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6) = 0 over K0
            TowerElement xg = TowerElement::generator_x(k0);
            TowerElement p_lin = TowerElement(e.a1()) * xg + TowerElement(e.a3());
            TowerElement q_neg = -(xg.pow(3) + TowerElement(e.a2()) * xg * xg + TowerElement(e.a4()) * xg +
                                   TowerElement(e.a6()));
            auto ys = quadratic_roots_in_tower(k0, p_lin, q_neg);
            TowerPtr tower = k0;
            if (ys.empty()) {
                if (2 * h.degree() > degree_max) continue;
                tower = NumberTower::make_quadratic(h, RatPoly{e.a3(), e.a1()},
                                                    -RatPoly{e.a6(), e.a4(), e.a2(), Rational(1)},
                                                    /*check_base=*/false);
            }
            // every root of h inside the x-layer gives a conjugate batch; the
            // quadratic in y is solved per root (conjugate roots may or may
            // not have their y inside this tower)
            for (auto& x_root : roots_in_x_layer(tower, h)) {
                TowerElement pl = TowerElement(e.a1()) * x_root + TowerElement(e.a3());
                TowerElement qn = -(x_root.pow(3) + TowerElement(e.a2()) * x_root * x_root +
                                    TowerElement(e.a4()) * x_root + TowerElement(e.a6()));
                auto y_choices = quadratic_roots_in_tower(tower, pl, qn);
                for (auto& y_val : y_choices) {
                    CurvePoint pt(e, x_root, y_val);
                    auto order = certified_order(pt, n);
                    if (!order || *order != n)
                        throw Error("torsion_enumerate: order certification failed (internal)");
                    out.push_back({pt, n, tower});
                }
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), torsion_detail::torsion_less);
    return out;
}

} // namespace qclocus
