#pragma once

#include <optional>
#include <vector>

#include "qclocus/polynomial.hpp"
#include "qclocus/tower.hpp"

namespace qclocus {

namespace padic {

inline Int pow_int(const Int& p, long k) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

/// q as an element of Z/p^k; q must have no p in its denominator.
inline Int rational_mod_pk(const Rational& q, const Int& p, long k) {
    Int pk = pow_int(p, k);
    Int dinv;
    if (mpz_invert(dinv.get_mpz_t(), q.den().get_mpz_t(), pk.get_mpz_t()) == 0)
        throw ContractError("rational_mod_pk: denominator not invertible");
    Int r = (q.num() % pk) * dinv % pk;
    if (r < 0) r += pk;
    return r;
}

/// Scaled p-adic approximation: value = unit * p^val + O(p^(val + rel)),
/// where p does not divide unit (unless the value is zero so far as known).
struct Scaled {
    Int unit;  // 0 encodes "zero to the stated precision"
    long val;  // meaningful when unit != 0
    long rel;  // relative precision in digits

    bool known_nonzero() const { return unit != 0; }
};

inline Scaled scaled_of_rational(const Rational& q, const Int& p, long digits) {
    if (q.is_zero()) return {Int(0), 0, digits};
    long v = q.valuation(p);
    Rational unit_part = q / Rational(pow_int(p, v >= 0 ? v : 0), pow_int(p, v >= 0 ? 0 : -v));
    return {rational_mod_pk(unit_part, p, digits), v, digits};
}

inline Scaled scaled_add(const Scaled& a, const Scaled& b, const Int& p) {
    if (!a.known_nonzero()) return {b.unit, b.val, std::min(a.rel, b.rel)};
    if (!b.known_nonzero()) return {a.unit, a.val, std::min(a.rel, b.rel)};
    long lo = std::min(a.val, b.val);
    long prec_abs = std::min(a.val + a.rel, b.val + b.rel);
    long digits = prec_abs - lo;
    if (digits <= 0) return {Int(0), 0, 0};
    Int pk = pow_int(p, digits);
    Int sum = (a.unit * pow_int(p, a.val - lo) + b.unit * pow_int(p, b.val - lo)) % pk;
    if (sum < 0) sum += pk;
    if (sum == 0) return {Int(0), lo, digits}; // zero to precision p^(lo+digits)
    long extra = int_valuation(sum, p);
    Int unit = sum / pow_int(p, extra);
    return {unit % pow_int(p, digits - extra), lo + extra, digits - extra};
}

inline Scaled scaled_mul(const Scaled& a, const Scaled& b, const Int& p) {
    if (!a.known_nonzero() || !b.known_nonzero()) return {Int(0), 0, std::min(a.rel, b.rel)};
    long digits = std::min(a.rel, b.rel);
    Int pk = pow_int(p, digits);
    return {(a.unit * b.unit) % pk, a.val + b.val, digits};
}

/// Newton-lift a root from a starting value satisfying |f(r0)| < |f'(r0)|^2;
/// returns the root modulo p^target (i.e. v(r - root) >= target).
inline Int hensel_lift_root(const RatPoly& f, const Int& p, const Int& r0, long /*start_prec*/, long target) {
    Int r = r0;
    RatPoly df = f.derivative();
    for (int iter = 0; iter < 256; ++iter) {
        Rational fr = f.eval(Rational(r));
        if (fr.is_zero()) break;
        long vf = fr.valuation(p);
        Rational dfr = df.eval(Rational(r));
        long vdf = dfr.is_zero() ? (1L << 30) : dfr.valuation(p);
        if (vf - vdf >= target) break; // v(r - root) = vf - vdf
        if (vf <= 2 * vdf) throw Error("hensel_lift_root: Newton criterion violated (internal)");
        long work = target + vdf + 4;
        Int pk = pow_int(p, work);
        Rational step = fr / dfr; // positive valuation, so p-free denominator
        r = ((r - rational_mod_pk(step, p, work)) % pk + pk) % pk;
    }
    Int pt = pow_int(p, target);
    return ((r % pt) + pt) % pt;
}

/// Newton starting values for the two branches of sqrt(m) in Z_p; m must be
/// a nonzero square in Q_p with even valuation 0 here (unit case).
inline std::vector<Int> sqrt_branch_starts(const Int& m, const Int& p) {
    std::vector<Int> out;
    if (p == 2) {
        // units that are squares are 1 mod 8; the two branches are +-rho,
        // distinguished mod 8 by {1, 7} vs {3, 5}
        if (((m % 8) + 8) % 8 != 1) return out;
        out.push_back(Int(1));
        out.push_back(Int(3));
        return out;
    }
    for (Int r = 0; r < p; ++r)
        if ((((r * r - m) % p) + p) % p == 0) out.push_back(r);
    return out;
}

/// Count the roots of f in Z_p (standard candidate-splitting with the simple
/// -root criterion).  Returns nullopt when the budget is exhausted before
/// every branch resolves.  f must be squarefree with integer coefficients.
inline std::optional<long> count_zp_roots(const RatPoly& f, const Int& p, long budget) {
    struct Branch {
        Int r;    // candidate residue mod p^k
        long k;
    };
    RatPoly df = f.derivative();
    std::vector<Branch> work;
    for (Int r = 0; r < p; ++r) {
        Rational fr = f.eval(Rational(r));
        if (fr.is_zero() || fr.valuation(p) >= 1) work.push_back({r, 1});
    }
    long count = 0;
    while (!work.empty()) {
        Branch b = work.back();
        work.pop_back();
        Rational fr = f.eval(Rational(b.r));
        if (fr.is_zero()) { // exact rational root hit
            ++count;
            continue;
        }
        long vf = fr.valuation(p);
        Rational dfr = df.eval(Rational(b.r));
        long vdf = dfr.is_zero() ? (1L << 30) : dfr.valuation(p);
        if (vf > 2 * vdf) { // Hensel: exactly one root in this residue disc
            ++count;
            continue;
        }
        if (vf < b.k) continue; // no root in this disc
        if (b.k >= budget) return std::nullopt;
        Int pk = pow_int(p, b.k);
        for (Int i = 0; i < p; ++i) work.push_back({b.r + i * pk, b.k + 1});
    }
    return count;
}

/// Roots of f in Q_p (integral and non-integral), for f squarefree.
inline std::optional<long> count_qp_roots(const RatPoly& f_in, const Int& p, long budget) {
    auto [fint, scale] = rational_to_integer_poly(f_in);
    (void)scale;
    // make squarefree
    RatPoly f = fint;
    RatPoly g = poly_gcd(f, f.derivative());
    if (g.degree() > 0) f = exact_div(f, g);
    auto integral = count_zp_roots(f, p, budget);
    if (!integral) return std::nullopt;
    // non-integral roots of f <-> roots of the reversed polynomial in pZ_p
    std::vector<Rational> rev(f.coeffs().rbegin(), f.coeffs().rend());
    RatPoly frev(std::move(rev));
    // roots of frev with strictly positive valuation: candidates r = 0 mod p only
    long nonintegral = 0;
    if (frev.coeff(0).valuation(p) >= 1) {
        // count roots of frev in pZ_p: substitute x = p*t and count t in Z_p
        std::vector<Rational> sub;
        for (long i = 0; i <= frev.degree(); ++i)
            sub.push_back(frev.coeff(static_cast<size_t>(i)) * Rational(pow_int(p, i), 1));
        auto [fsub, s2] = rational_to_integer_poly(RatPoly(std::move(sub)));
        (void)s2;
        auto inner = count_zp_roots(fsub, p, budget);
        if (!inner) return std::nullopt;
        nonintegral = *inner;
    }
    return *integral + nonintegral;
}

/// Is the scaled p-adic value a square in Q_p?  Requires enough relative
/// precision (3 digits at p = 2, 1 otherwise); nullopt when undecidable.
inline std::optional<bool> scaled_is_square(const Scaled& s, const Int& p) {
    if (!s.known_nonzero()) return std::nullopt;
    if (s.val % 2 != 0) return false;
    if (p == 2) {
        if (s.rel < 3) return std::nullopt;
        return s.unit % 8 == 1;
    }
    if (s.rel < 1) return std::nullopt;
    // Euler criterion on the unit part
    Int e = (p - 1) / 2, r;
    mpz_powm(r.get_mpz_t(), s.unit.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r == 1;
}

} // namespace padic

/// Number of field embeddings of the tower into Q_p, i.e. Q-algebra maps
/// tower -> Q_p.  Counts roots of the base polynomial in Q_p and, per root,
/// solutions of the quadratic layer.  nullopt = undecided within the budget.
inline std::optional<long> count_tower_embeddings(const TowerPtr& tower, const Int& p, long budget) {
    if (tower->is_trivial()) return 1;
    if (!tower->has_quadratic_layer()) return padic::count_qp_roots(tower->base_poly(), p, budget);

    // two-layer: for each Q_p-root of the base polynomial, test whether the
    // discriminant of the quadratic layer is a square in Q_p
    const RatPoly& f = tower->base_poly();
    if (f.degree() == 1) {
        Rational x0 = -f.coeff(0);
        RatPoly c1 = tower->quad_c1(), c0 = tower->quad_c0();
        Rational disc = c1.eval(x0) * c1.eval(x0) - Rational(4) * c0.eval(x0);
        if (disc.is_zero()) return std::nullopt;
        for (long digits = 4; digits <= budget; digits *= 2) {
            auto sq = padic::scaled_is_square(padic::scaled_of_rational(disc, p, digits), p);
            if (sq.has_value()) return *sq ? 2 : 0;
        }
        return std::nullopt;
    }
    // base roots must be lifted to evaluate the layer discriminant; supported
    // for integral simple roots via Newton refinement
    auto [fint, scale] = rational_to_integer_poly(f);
    (void)scale;
    long total = 0;
    bool undecided = false;
    RatPoly df = fint.derivative();
    for (Int r = 0; r < p; ++r) {
        Rational fr = fint.eval(Rational(r));
        if (!fr.is_zero() && fr.valuation(p) < 1) continue;
        Rational dfr = df.eval(Rational(r));
        if (dfr.is_zero() || (!fr.is_zero() && !(fr.valuation(p) > 2 * dfr.valuation(p)))) {
            undecided = true; // root cluster not resolved by the simple criterion
            continue;
        }
        long digits = std::max<long>(budget, 8);
        // lift well beyond the output precision so the evaluation error of
        // the layer discriminant stays beneath the decision digits
        Int root = padic::hensel_lift_root(fint, p, r, 1, 2 * digits + 4);
        RatPoly c1 = tower->quad_c1(), c0 = tower->quad_c0();
        Rational c1r = c1.eval(Rational(root)), c0r = c0.eval(Rational(root));
        Rational disc = c1r * c1r - Rational(4) * c0r;
        padic::Scaled sd = padic::scaled_of_rational(disc, p, digits);
        if (sd.known_nonzero() && sd.val > digits / 2) {
            undecided = true; // approximation may be hiding a zero
            continue;
        }
        auto sq = padic::scaled_is_square(sd, p);
        if (!sq.has_value()) {
            undecided = true;
            continue;
        }
        total += *sq ? 2 : 0;
    }
    // non-integral base roots can only occur when p divides the leading
    // coefficient of the integral form
    if (fint.leading().num() % p == 0) undecided = true;
    if (undecided) return std::nullopt;
    return total;
}

} // namespace qclocus
