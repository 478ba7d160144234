#pragma once

#include <optional>
#include <utility>

#include "qclocus/padic.hpp"
#include "qclocus/point.hpp"
#include "qclocus/radical.hpp"
#include "qclocus/reduction.hpp"
#include "qclocus/residues.hpp"

namespace qclocus {

/// A finite place of Q or of a quadratic field K = Q(sqrt m), normalised so
/// v(ell) = 1 (the value group is Z for split/inert places and (1/2)Z for
/// ramified ones).
struct QuadraticPlace {
    TowerPtr field;        // trivial tower for Q; otherwise degree-2 tower
    Int ell;
    enum class Splitting { Rational, Split, Inert, Ramified } splitting;
    Int m;                 // squarefree integer with K = Q(sqrt m); 0 for Q
    Rational gen_a, gen_b; // tower generator = gen_a + gen_b * sqrt(m)
    int root_index = 0;    // split places: which Hensel branch of sqrt(m)

    long ramification() const { return splitting == Splitting::Ramified ? 2 : 1; }
};

namespace heights_detail {

/// Decompose a degree <= 2 tower as Q(sqrt m) with m a squarefree integer,
/// plus the coordinates of the generator.  Supports trivial towers, a
/// quadratic x-layer, or a quadratic y-layer over a trivial x-layer.
struct QuadraticFieldView {
    Int m = 0;             // 0 for the rationals
    Rational gen_a, gen_b; // generator = gen_a + gen_b sqrt(m); identifies the layer
    bool uses_y = false;   // generator is the y-layer generator
};

inline QuadraticFieldView quadratic_view(const TowerPtr& tower) {
    QuadraticFieldView out;
    if (tower->degree() == 1) return out;
    if (tower->degree() != 2)
        throw CapabilityError("quadratic places: field degree exceeds 2");
    RatPoly f;
    if (tower->has_quadratic_layer()) {
        // base degree 1; quadratic layer y^2 + c1 y + c0 with rational c1, c0
        out.uses_y = true;
        Rational x0 = -tower->base_poly().coeff(0);
        Rational c1 = tower->quad_c1().eval(x0), c0 = tower->quad_c0().eval(x0);
        f = RatPoly{c0, c1, Rational(1)};
    } else {
        f = tower->base_poly();
    }
    // generator g satisfies g = -b/2 + sqrt(disc)/2, disc = b^2 - 4c
    Rational b = f.coeff(1), c = f.coeff(0);
    Rational disc = b * b - Rational(4) * c;
    // disc = m * s^2 with m squarefree
    Int nd = disc.num() * disc.den();
    Int m = 1;
    for (auto& [p, e] : factor_integer(nd))
        if (e % 2 == 1) m *= p;
    if (nd < 0) m = -m;
    out.m = m;
    // sqrt(disc) = s * sqrt(m), s = sqrt(disc/m) rational
    Rational s;
    if (!rational_sqrt(disc / Rational(m), &s))
        throw Error("quadratic_view: squarefree decomposition failed (internal)");
    out.gen_a = -b / Rational(2);
    out.gen_b = s / Rational(2);
    return out;
}

/// Coordinates (a, b) with alpha = a + b sqrt(m); alpha must lie in the
/// place's field presentation.
inline std::pair<Rational, Rational> sqrt_m_coordinates(const QuadraticPlace& place, const TowerElement& alpha) {
    if (auto r = alpha.as_rational()) return {*r, Rational(0)};
    if (place.m == 0) throw ContractError("place valuation: irrational element at a rational place");
    if (!alpha.tower()->same_presentation(*place.field))
        throw CapabilityError("place valuation: element lives in a different field");
    // alpha = u + v * gen where gen = gen_a + gen_b sqrt(m)
    Rational u, v;
    QuadraticFieldView view = quadratic_view(alpha.tower());
    if (view.uses_y) {
        u = alpha.x_part().is_zero() ? Rational(0) : alpha.x_part().coeff(0);
        v = alpha.y_part().is_zero() ? Rational(0) : alpha.y_part().coeff(0);
    } else {
        u = alpha.x_part().coeff(0);
        v = alpha.x_part().coeff(1);
    }
    return {u + v * place.gen_a, v * place.gen_b};
}

} // namespace heights_detail

/// The places of the (degree <= 2) coordinate field of `tower` over ell:
/// two for split primes, one otherwise.
inline std::vector<QuadraticPlace> places_over(const TowerPtr& tower, const Int& ell) {
    if (!is_prime(ell)) throw ContractError("places_over: modulus must be prime");
    heights_detail::QuadraticFieldView view = heights_detail::quadratic_view(tower);
    std::vector<QuadraticPlace> out;
    if (view.m == 0) {
        out.push_back({tower, ell, QuadraticPlace::Splitting::Rational, Int(0), Rational(0), Rational(0), 0});
        return out;
    }
    QuadraticPlace base{tower, ell, QuadraticPlace::Splitting::Inert, view.m, view.gen_a, view.gen_b, 0};
    bool ramified, split;
    if (ell == 2) {
        Int mod8 = ((view.m % 8) + 8) % 8;
        ramified = !(mod8 == 1 || mod8 == 5);
        split = mod8 == 1;
    } else {
        Int mp = ((view.m % ell) + ell) % ell;
        if (mp == 0) {
            ramified = true;
            split = false;
        } else {
            ramified = false;
            FpCtx F{ell.get_ui()};
            split = F.pow(mp.get_ui(), (F.p - 1) / 2) == 1;
        }
    }
    if (ramified) {
        base.splitting = QuadraticPlace::Splitting::Ramified;
        out.push_back(base);
    } else if (split) {
        base.splitting = QuadraticPlace::Splitting::Split;
        base.root_index = 0;
        out.push_back(base);
        base.root_index = 1;
        out.push_back(base);
    } else {
        out.push_back(base);
    }
    return out;
}

/// Exact normalised valuation of a nonzero element at the place.
inline Rational place_valuation(const QuadraticPlace& place, const TowerElement& alpha) {
    if (alpha.is_zero()) throw ContractError("place_valuation: zero element");
    if (auto r = alpha.as_rational()) return Rational(r->valuation(place.ell));
    auto [a, b] = heights_detail::sqrt_m_coordinates(place, alpha);
    switch (place.splitting) {
        case QuadraticPlace::Splitting::Rational:
            throw ContractError("place_valuation: irrational element at a rational place");
        case QuadraticPlace::Splitting::Inert:
        case QuadraticPlace::Splitting::Ramified: {
            Rational norm = a * a - Rational(place.m) * b * b;
            return Rational(norm.valuation(place.ell), 2);
        }
        case QuadraticPlace::Splitting::Split: {
            // v(a + b rho) for the chosen Hensel branch rho of sqrt(m)
            long bound = (a * a - Rational(place.m) * b * b).valuation(place.ell); // v1 + v2
            long slack = std::abs(bound) + 4;
            for (long digits = slack;; digits *= 2) {
                RatPoly f{-Rational(place.m), Rational(0), Rational(1)};
                auto starts = padic::sqrt_branch_starts(place.m, place.ell);
                if (starts.size() != 2) throw Error("place_valuation: split prime without two branches (internal)");
                Int rho = padic::hensel_lift_root(f, place.ell, starts[static_cast<size_t>(place.root_index)], 1, digits);
                padic::Scaled sa = padic::scaled_of_rational(a, place.ell, digits);
                padic::Scaled sb = padic::scaled_of_rational(b, place.ell, digits);
                padic::Scaled srho{rho, 0, digits};
                padic::Scaled sum = padic::scaled_add(sa, padic::scaled_mul(sb, srho, place.ell), place.ell);
                if (sum.known_nonzero()) return Rational(sum.val);
                if (digits > 4 * slack + 64)
                    throw PrecisionError("place_valuation: split-place valuation did not stabilise");
            }
        }
    }
    throw Error("place_valuation: unreachable");
}

/// Valuation of a formal radical at the place: sum of exponent-weighted base
/// valuations.  Bases must be rational or live in the place's field.
inline Rational place_valuation(const QuadraticPlace& place, const FormalRadical& r) {
    Rational v(0);
    for (const auto& f : r.factors()) v += f.exponent * place_valuation(place, f.base);
    return v;
}

namespace heights_detail {

/// Residue of a v-integral element in the residue field, encoded as a pair
/// (c0, c1) over F_ell meaning c0 + c1 * wbar (wbar = 0 except for inert
/// places, where the residue field is F_{ell^2}).
inline std::pair<Int, Int> place_residue(const QuadraticPlace& place, const TowerElement& alpha) {
    const Int& l = place.ell;
    auto reduce_rational = [&](const Rational& q) {
        if (q.is_zero()) return Int(0);
        if (q.valuation(l) < 0) throw ContractError("place_residue: element is not integral at the place");
        return padic::rational_mod_pk(q, l, 1);
    };
    if (auto r = alpha.as_rational()) return {reduce_rational(*r), Int(0)};
    auto [a, b] = sqrt_m_coordinates(place, alpha);
    switch (place.splitting) {
        case QuadraticPlace::Splitting::Rational:
            throw ContractError("place_residue: irrational element at a rational place");
        case QuadraticPlace::Splitting::Split: {
            if (place_valuation(place, alpha) < Rational(0))
                throw ContractError("place_residue: element is not integral at the place");
            long digits = 8;
            for (;;) {
                auto starts = padic::sqrt_branch_starts(place.m, l);
                if (starts.size() != 2) throw Error("place_residue: split prime without two branches (internal)");
                RatPoly f{-Rational(place.m), Rational(0), Rational(1)};
                Int rho = padic::hensel_lift_root(f, l, starts[static_cast<size_t>(place.root_index)], 1, digits);
                padic::Scaled sa = padic::scaled_of_rational(a, l, digits);
                padic::Scaled sb = padic::scaled_of_rational(b, l, digits);
                padic::Scaled srho{rho, 0, digits};
                padic::Scaled sum = padic::scaled_add(sa, padic::scaled_mul(sb, srho, l), l);
                if (!sum.known_nonzero()) {
                    if (digits > 512) return {Int(0), Int(0)}; // zero far beyond need
                    digits *= 2;
                    continue;
                }
                if (sum.val > 0) return {Int(0), Int(0)};
                if (sum.val < 0) throw ContractError("place_residue: element is not integral at the place");
                return {sum.unit % l, Int(0)};
            }
        }
        case QuadraticPlace::Splitting::Inert: {
            if (l == 2) {
                // integral basis {1, w}, w = (1 + sqrt m)/2: alpha = (a - b) + 2b w
                Rational c0 = a - b, c1 = Rational(2) * b;
                return {reduce_rational(c0), reduce_rational(c1)};
            }
            return {reduce_rational(a), reduce_rational(b)};
        }
        case QuadraticPlace::Splitting::Ramified: {
            // sqrt(m) reduces to 0 unless l = 2 with m = 3 mod 4 (pi = 1 + sqrt m)
            Int mod4 = ((place.m % 4) + 4) % 4;
            if (l == 2 && mod4 == 3) return {reduce_rational(a + b), Int(0)};
            return {reduce_rational(a), Int(0)};
        }
    }
    throw Error("place_residue: unreachable");
}

/// Multiplication in the residue field F_ell(wbar); for inert odd ell,
/// wbar^2 = m; for inert ell = 2, wbar^2 = wbar + (m-1)/4.
inline std::pair<Int, Int> residue_mul(const QuadraticPlace& place, std::pair<Int, Int> x, std::pair<Int, Int> y) {
    const Int& l = place.ell;
    Int c0, c1, wsq_const = 0, wsq_lin = 0;
    if (place.splitting == QuadraticPlace::Splitting::Inert) {
        if (l == 2) {
            wsq_const = ((place.m - 1) / 4) % 2;
            wsq_lin = 1;
        } else {
            wsq_const = place.m % l;
        }
    }
    Int cross = x.first * y.second + x.second * y.first;
    Int sq = x.second * y.second;
    c0 = (x.first * y.first + sq * wsq_const) % l;
    c1 = (cross + sq * wsq_lin) % l;
    if (c0 < 0) c0 += l;
    if (c1 < 0) c1 += l;
    return {c0, c1};
}

} // namespace heights_detail

/// Does Q reduce to a nonsingular point of the special fibre at the place?
/// Points reducing to the identity (negative x-valuation) count as
/// nonsingular.  E must be minimal (and in particular integral).
inline bool reduces_to_nonsingular(const WeierstrassModel& e_min, const CurvePoint& q, const QuadraticPlace& v) {
    if (!e_min.is_integral()) throw ContractError("reduces_to_nonsingular: model must be integral");
    if (q.is_infinity()) return true;
    if (!q.x().is_zero() && place_valuation(v, q.x()) < Rational(0)) return true; // identity component
    using heights_detail::place_residue;
    using heights_detail::residue_mul;
    auto xr = place_residue(v, q.x());
    auto yr = place_residue(v, q.y());
    const Int& l = v.ell;
    auto red = [&](const Rational& a) { return padic::rational_mod_pk(a, l, 1); };
    // F_x = a1 y - 3x^2 - 2 a2 x - a4 ; F_y = 2y + a1 x + a3, in the residue field
    auto mul = [&](std::pair<Int, Int> p1, std::pair<Int, Int> p2) { return residue_mul(v, p1, p2); };
    auto scale = [&](const Int& c, std::pair<Int, Int> p1) {
        Int c0 = (c * p1.first) % l, c1 = (c * p1.second) % l;
        if (c0 < 0) c0 += l;
        if (c1 < 0) c1 += l;
        return std::make_pair(c0, c1);
    };
    auto add = [&](std::pair<Int, Int> p1, std::pair<Int, Int> p2) -> std::pair<Int, Int> {
        return {Int((p1.first + p2.first) % l), Int((p1.second + p2.second) % l)};
    };
    auto x2 = mul(xr, xr);
    std::pair<Int, Int> fx = add(add(scale(red(e_min.a1()), yr), scale(l - 3 % l, x2)),
                                 add(scale(((-2 * red(e_min.a2())) % l + l) % l, xr),
                                     {((-red(e_min.a4())) % l + l) % l, Int(0)}));
    std::pair<Int, Int> fy = add(add(scale(Int(2), yr), scale(red(e_min.a1()), xr)), {red(e_min.a3()), Int(0)});
    bool fx_zero = fx.first % l == 0 && fx.second % l == 0;
    bool fy_zero = fy.first % l == 0 && fy.second % l == 0;
    return !(fx_zero && fy_zero);
}

/// Renormalised local height at a finite place, for points with nonsingular
/// reduction on the minimal model: (1/2) max(0, -v(x(Q))).
inline Rational local_height_nonsingular(const WeierstrassModel& e_min, const CurvePoint& q,
                                         const QuadraticPlace& v) {
    if (q.is_infinity()) throw ContractError("local_height_nonsingular: Q must be affine");
    if (!reduces_to_nonsingular(e_min, q, v))
        throw CapabilityError("local_height_nonsingular: singular reduction is outside this function's scope");
    if (q.x().is_zero()) return Rational(0);
    Rational vx = place_valuation(v, q.x());
    Rational zero(0);
    return vx < zero ? -vx * Rational(1, 2) : zero;
}

/// lambda_v(nQ) = n^2 lambda_v(Q) + v(psi_n(Q)), checked exactly.  Both Q and
/// nQ must reduce to nonsingular points and Q must avoid E[n].
inline bool height_multiplication_check(const WeierstrassModel& e_min, const CurvePoint& q, long n,
                                        const QuadraticPlace& v) {
    CurvePoint nq = point_mul(n, q);
    if (q.is_infinity() || nq.is_infinity())
        throw ContractError("height_multiplication_check: Q and nQ must be affine");
    Rational lhs = local_height_nonsingular(e_min, nq, v);
    DivisionPolynomials divs(e_min);
    TowerElement psi_val = divs.psi(n).eval(q.x(), q.y());
    if (psi_val.is_zero()) throw ContractError("height_multiplication_check: Q lies in E[n]");
    Rational rhs = Rational(n * n) * local_height_nonsingular(e_min, q, v) + place_valuation(v, psi_val);
    return lhs == rhs;
}

/// lambda_v(Q) = v(H^st(Q)) - v(Delta_min)/12 for torsion Q with nonsingular
/// reduction, checked exactly through the formal radical.
inline bool hst_height_crosscheck(const WeierstrassModel& e_min, const CurvePoint& q, long order,
                                  const QuadraticPlace& v) {
    HstValue h = hst_of_point(e_min, q, order);
    Rational lhs = local_height_nonsingular(e_min, q, v);
    Rational vdelta = Rational(e_min.invariants().delta.valuation(v.ell));
    Rational rhs = place_valuation(v, h.radical) - vdelta * Rational(1, 12);
    return lhs == rhs;
}

} // namespace qclocus
