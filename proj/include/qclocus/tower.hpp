#pragma once

#include <memory>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "qclocus/factor.hpp"
#include "qclocus/polynomial.hpp"

namespace qclocus {

/// A number field presented as Q[x]/(f), optionally extended by one monic
/// quadratic layer Q[x]/(f)[y]/(y^2 + c1*y + c0) with c1, c0 in the x-layer.
/// This two-layer shape is all the torsion machinery ever needs: x-coordinates
/// generate the first layer and y-coordinates at worst a quadratic on top.
class NumberTower {
public:
    static std::shared_ptr<const NumberTower> rationals() {
        static auto t = std::shared_ptr<const NumberTower>(new NumberTower(RatPoly{Rational(0), Rational(1)}, false, {}, {}));
        return t;
    }

    /// Single-layer tower.  `f` must be monic irreducible; set check=false to
    /// skip the (factorization-based) irreducibility check for trusted input.
    static std::shared_ptr<const NumberTower> make(const RatPoly& f, bool check = true) {
        if (f.is_zero() || !f.is_monic() || f.degree() < 1)
            throw ContractError("NumberTower: defining polynomial must be monic of degree >= 1");
        if (check && f.degree() > 1) {
            auto factors = poly_factor(f);
            if (factors.size() != 1 || factors.front().second != 1)
                throw ContractError("NumberTower: defining polynomial is reducible");
        }
        return std::shared_ptr<const NumberTower>(new NumberTower(f, false, {}, {}));
    }

    /// Two-layer tower: y^2 + c1*y + c0 over Q[x]/(f), with c1, c0 given as
    /// reduced x-layer representatives.  The quadratic must be irreducible
    /// over the x-layer (callers establish this; see quadratic_roots).
    static std::shared_ptr<const NumberTower> make_quadratic(const RatPoly& f, RatPoly c1, RatPoly c0,
                                                             bool check_base = true) {
        auto base = make(f, check_base); // validates f
        (void)base;
        return std::shared_ptr<const NumberTower>(new NumberTower(f, true, std::move(c1), std::move(c0)));
    }

    const RatPoly& base_poly() const { return f_; }
    bool has_quadratic_layer() const { return quad_; }
    const RatPoly& quad_c1() const { return c1_; }
    const RatPoly& quad_c0() const { return c0_; }

    long base_degree() const { return f_.degree(); }
    long degree() const { return base_degree() * (quad_ ? 2 : 1); }
    bool is_trivial() const { return degree() == 1 && !quad_; }

    bool same_presentation(const NumberTower& o) const {
        return f_ == o.f_ && quad_ == o.quad_ && c1_ == o.c1_ && c0_ == o.c0_;
    }

    std::string str() const {
        std::ostringstream os;
        if (is_trivial()) return "Q";
        os << "Q[x]/(" << f_.str() << ")";
        if (quad_) os << "[y]/(y^2 + (" << c1_.str() << ")*y + (" << c0_.str() << "))";
        return os.str();
    }

private:
    NumberTower(RatPoly f, bool quad, RatPoly c1, RatPoly c0)
        : f_(std::move(f)), quad_(quad), c1_(std::move(c1)), c0_(std::move(c0)) {}

    RatPoly f_;
    bool quad_;
    RatPoly c1_, c0_;
};

using TowerPtr = std::shared_ptr<const NumberTower>;

/// Element of a NumberTower, stored as a + b*y with a, b reduced x-layer
/// polynomials (b = 0 when there is no quadratic layer).
class TowerElement {
public:
    TowerElement() : t_(NumberTower::rationals()), a_(), b_() {}
    TowerElement(const Rational& r) : t_(NumberTower::rationals()), a_(RatPoly(r)), b_() {}
    TowerElement(int n) : TowerElement(Rational(n)) {}

    TowerElement(TowerPtr tower, RatPoly a, RatPoly b = RatPoly())
        : t_(std::move(tower)), a_(reduce(a, *t_)), b_(reduce(b, *t_)) {
        if (!t_->has_quadratic_layer() && !b_.is_zero())
            throw ContractError("TowerElement: y-part in a tower without quadratic layer");
    }

    static TowerElement generator_x(const TowerPtr& tower) {
        return TowerElement(tower, RatPoly::x(), RatPoly());
    }
    static TowerElement generator_y(const TowerPtr& tower) {
        if (!tower->has_quadratic_layer())
            throw ContractError("TowerElement: tower has no quadratic layer");
        return TowerElement(tower, RatPoly(), RatPoly::one());
    }

    const TowerPtr& tower() const { return t_; }
    const RatPoly& x_part() const { return a_; }
    const RatPoly& y_part() const { return b_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    /// Rational value if the element lies in Q.
    std::optional<Rational> as_rational() const {
        if (!b_.is_zero() || a_.degree() > 0) return std::nullopt;
        return a_.is_zero() ? Rational(0) : a_.coeff(0);
    }

    bool is_rational() const { return as_rational().has_value(); }

    /// Power-basis coordinates 1, x, .., x^(df-1), y, xy, .., x^(df-1)y.
    std::vector<Rational> coordinates() const {
        long df = t_->base_degree();
        std::vector<Rational> v(static_cast<size_t>(t_->degree()), Rational(0));
        for (long i = 0; i <= a_.degree(); ++i) v[static_cast<size_t>(i)] = a_.coeff(static_cast<size_t>(i));
        for (long i = 0; i <= b_.degree(); ++i) v[static_cast<size_t>(df + i)] = b_.coeff(static_cast<size_t>(i));
        return v;
    }

    friend bool operator==(const TowerElement& p, const TowerElement& q) {
        auto [a, b] = TowerElement::harmonize(p, q);
        return a.a_ == b.a_ && a.b_ == b.b_;
    }
    friend bool operator!=(const TowerElement& p, const TowerElement& q) { return !(p == q); }

    TowerElement operator-() const { return TowerElement(t_, -a_, -b_, nocheck{}); }

    friend TowerElement operator+(const TowerElement& p, const TowerElement& q) {
        auto [a, b] = harmonize(p, q);
        return TowerElement(a.t_, a.a_ + b.a_, a.b_ + b.b_, nocheck{});
    }
    friend TowerElement operator-(const TowerElement& p, const TowerElement& q) {
        auto [a, b] = harmonize(p, q);
        return TowerElement(a.t_, a.a_ - b.a_, a.b_ - b.b_, nocheck{});
    }
    friend TowerElement operator*(const TowerElement& p, const TowerElement& q) {
        auto [u, v] = harmonize(p, q);
        const NumberTower& T = *u.t_;
        RatPoly aa = reduce(u.a_ * v.a_, T);
        if (u.b_.is_zero() && v.b_.is_zero()) return TowerElement(u.t_, aa, RatPoly(), nocheck{});
        RatPoly bb = reduce(u.b_ * v.b_, T);
        RatPoly cross = reduce(u.a_ * v.b_ + u.b_ * v.a_, T);
        // y^2 = -c1*y - c0
        RatPoly a_out = aa - reduce(bb * T.quad_c0(), T);
        RatPoly b_out = cross - reduce(bb * T.quad_c1(), T);
        return TowerElement(u.t_, reduce(a_out, T), reduce(b_out, T), nocheck{});
    }
    friend TowerElement operator/(const TowerElement& p, const TowerElement& q) { return p * q.inverse(); }

    TowerElement& operator+=(const TowerElement& o) { return *this = *this + o; }
    TowerElement& operator-=(const TowerElement& o) { return *this = *this - o; }
    TowerElement& operator*=(const TowerElement& o) { return *this = *this * o; }

    friend TowerElement operator*(const TowerElement& p, const Rational& s) { return p * TowerElement(s); }
    friend TowerElement operator*(const Rational& s, const TowerElement& p) { return p * TowerElement(s); }

    TowerElement inverse() const {
        if (is_zero()) throw ContractError("TowerElement: inverse of zero");
        const NumberTower& T = *t_;
        if (b_.is_zero()) return TowerElement(t_, k0_inverse(a_, T), RatPoly(), nocheck{});
        // (a + by)^-1 = (a + b*(-c1 - y)) / N,  N = a^2 - a*b*c1 + b^2*c0 in the x-layer
        RatPoly n = reduce(a_ * a_ - a_ * b_ * T.quad_c1() + b_ * b_ * T.quad_c0(), T);
        RatPoly ninv = k0_inverse(n, T);
        RatPoly a_out = reduce((a_ - b_ * T.quad_c1()) * ninv, T);
        RatPoly b_out = reduce(-b_ * ninv, T);
        return TowerElement(t_, a_out, b_out, nocheck{});
    }

    TowerElement pow(const Int& e) const {
        if (e == 0) return TowerElement(t_, RatPoly::one(), RatPoly(), nocheck{});
        TowerElement base = e < 0 ? inverse() : *this;
        Int k = ::abs(e);
        TowerElement acc(t_, RatPoly::one(), RatPoly(), nocheck{});
        for (long bit = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
            acc = acc * acc;
            if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) acc = acc * base;
        }
        return acc;
    }
    TowerElement pow(long e) const { return pow(Int(e)); }

    /// Image under the nontrivial automorphism of the quadratic layer
    /// (identity when there is none).
    TowerElement quad_conjugate() const {
        if (!t_->has_quadratic_layer() || b_.is_zero()) return *this;
        return TowerElement(t_, a_ - reduce(b_ * t_->quad_c1(), *t_), -b_, nocheck{});
    }

    std::string str() const {
        std::ostringstream os;
        os << "(" << a_.str();
        if (t_->has_quadratic_layer() && !b_.is_zero()) os << ") + (" << b_.str() << ")*y";
        else os << ")";
        return os.str();
    }

    /// Lift both operands into one tower.  Rationals coerce to anything;
    /// otherwise presentations must agree.
    static std::pair<TowerElement, TowerElement> harmonize(const TowerElement& p, const TowerElement& q) {
        if (p.t_ == q.t_ || p.t_->same_presentation(*q.t_)) return {p, q};
        if (p.t_->is_trivial()) {
            Rational r = p.a_.is_zero() ? Rational(0) : p.a_.coeff(0);
            return {TowerElement(q.t_, RatPoly(r), RatPoly(), nocheck{}), q};
        }
        if (q.t_->is_trivial()) {
            Rational r = q.a_.is_zero() ? Rational(0) : q.a_.coeff(0);
            return {p, TowerElement(p.t_, RatPoly(r), RatPoly(), nocheck{})};
        }
        throw CapabilityError("TowerElement: operands live in different towers");
    }

private:
    struct nocheck {};
    TowerElement(TowerPtr t, RatPoly a, RatPoly b, nocheck) : t_(std::move(t)), a_(std::move(a)), b_(std::move(b)) {}

    static RatPoly reduce(const RatPoly& p, const NumberTower& t) {
        if (p.degree() < t.base_degree()) return p;
        return p % t.base_poly();
    }

    static RatPoly k0_inverse(const RatPoly& a, const NumberTower& t) {
        // extended Euclid in Q[x] against the defining polynomial
        RatPoly r0 = t.base_poly(), r1 = a % t.base_poly();
        RatPoly s0, s1 = RatPoly::one();
        if (r1.is_zero()) throw ContractError("TowerElement: inverse of zero in x-layer");
        while (!r1.is_zero()) {
            auto [q, r2] = divmod(r0, r1);
            RatPoly s2 = s0 - q * s1;
            r0 = std::move(r1);
            r1 = std::move(r2);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (r0.degree() != 0) throw ContractError("TowerElement: x-layer element not invertible");
        return (s0 * r0.coeff(0).inverse()) % t.base_poly();
    }

    TowerPtr t_;
    RatPoly a_, b_;
};

/// Monic minimal polynomial of alpha over Q, found by the first linear
/// dependence among its powers.
inline RatPoly tower_minimal_polynomial(const TowerElement& alpha) {
    long d = alpha.tower()->degree();
    // Incremental row reduction over Q with combination tracking.
    std::vector<std::vector<Rational>> rows;      // reduced rows
    std::vector<long> pivot_cols;
    std::vector<std::vector<Rational>> combos;    // row = sum combos[i][k] * alpha^k
    TowerElement power(alpha.tower(), RatPoly::one());
    for (long k = 0; k <= d; ++k) {
        std::vector<Rational> v = power.coordinates();
        std::vector<Rational> combo(static_cast<size_t>(k) + 1, Rational(0));
        combo[static_cast<size_t>(k)] = Rational(1);
        for (size_t i = 0; i < rows.size(); ++i) {
            long pc = pivot_cols[i];
            if (v[static_cast<size_t>(pc)].is_zero()) continue;
            Rational factor = v[static_cast<size_t>(pc)];
            for (size_t j = 0; j < v.size(); ++j) v[j] -= factor * rows[i][j];
            for (size_t j = 0; j < combos[i].size() && j < combo.size(); ++j) combo[j] -= factor * combos[i][j];
        }
        long pc = -1;
        for (size_t j = 0; j < v.size(); ++j)
            if (!v[j].is_zero()) { pc = static_cast<long>(j); break; }
        if (pc < 0) {
            // alpha^k = -sum_{j<k} combo[j]/combo[k] * alpha^j ... combo[k] = 1 by construction
            std::vector<Rational> mp(combo.begin(), combo.end());
            return RatPoly(std::move(mp));
        }
        Rational inv = v[static_cast<size_t>(pc)].inverse();
        for (auto& c : v) c *= inv;
        for (auto& c : combo) c *= inv;
        rows.push_back(std::move(v));
        pivot_cols.push_back(pc);
        combos.push_back(std::move(combo));
        power = power * alpha;
    }
    throw Error("tower_minimal_polynomial: no dependence found (corrupt tower)");
}

/// Norm from the tower down to Q.
inline Rational tower_norm(const TowerElement& alpha) {
    if (alpha.is_zero()) return Rational(0);
    RatPoly mu = tower_minimal_polynomial(alpha);
    long k = mu.degree();
    long d = alpha.tower()->degree();
    Rational n = mu.coeff(0);
    if (k % 2 == 1) n = -n;
    return n.pow(d / k);
}

/// If gamma is a root of unity, its exact (minimal) order.  Tests every
/// order w with phi(w) <= tower degree; no other orders can occur.
inline std::optional<long> is_root_of_unity(const TowerElement& gamma) {
    if (gamma.is_zero()) throw ContractError("is_root_of_unity: zero element");
    long d = gamma.tower()->degree();
    TowerElement one(Rational(1));
    for (long w : phi_bounded_orders(d)) {
        if (gamma.pow(w) == one) return w;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Root finding in towers (Trager's norm method)
// ---------------------------------------------------------------------------

namespace tragerdet {

/// Resultant in x of f(x) and G(x, Y) = sum_j G_j(x) Y^j, as a polynomial in
/// Y, by evaluation at rational points and Lagrange interpolation.
inline RatPoly norm_resultant(const RatPoly& f, const std::vector<RatPoly>& g_coeffs) {
    long degY = static_cast<long>(g_coeffs.size()) - 1;
    long bound = f.degree() * degY + 1;
    std::vector<Rational> xs, ys;
    for (long i = 0; xs.size() < static_cast<size_t>(bound + 1); ++i) {
        Rational yi(i);
        RatPoly g_at;
        for (size_t j = g_coeffs.size(); j-- > 0;) g_at = g_at * RatPoly(yi) + g_coeffs[j];
        // degree in x may drop at special evaluation points; the resultant
        // formula stays correct because we interpolate the full product form
        // via the Sylvester matrix only when degrees are stable.  Guard:
        long expected = -1;
        for (const auto& gc : g_coeffs) expected = std::max(expected, gc.degree());
        if (g_at.degree() != expected) continue; // skip degenerate sample
        xs.push_back(yi);
        ys.push_back(resultant(f, g_at));
    }
    // Lagrange interpolation.
    RatPoly acc;
    for (size_t i = 0; i < xs.size(); ++i) {
        RatPoly li = RatPoly::one();
        Rational denom(1);
        for (size_t j = 0; j < xs.size(); ++j) {
            if (i == j) continue;
            li = li * RatPoly{-xs[j], Rational(1)};
            denom *= xs[i] - xs[j];
        }
        acc = acc + li * (ys[i] / denom);
    }
    return acc;
}

/// gcd in K0[Y] where K0 is the x-layer of `tower`; coefficients are
/// TowerElements with zero y-part.
inline std::vector<TowerElement> k0poly_gcd(std::vector<TowerElement> a, std::vector<TowerElement> b) {
    auto trim = [](std::vector<TowerElement>& v) {
        while (!v.empty() && v.back().is_zero()) v.pop_back();
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b
        TowerElement lead_inv = b.back().inverse();
        while (a.size() >= b.size() && !a.empty()) {
            TowerElement f = a.back() * lead_inv;
            size_t shift = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) a[i + shift] = a[i + shift] - f * b[i];
            trim(a);
            if (a.size() < b.size()) break;
        }
        std::swap(a, b);
        trim(b);
    }
    if (!a.empty()) {
        TowerElement inv = a.back().inverse();
        for (auto& c : a) c = c * inv;
    }
    return a;
}

} // namespace tragerdet

/// All roots, inside the x-layer of `tower`, of the polynomial
/// g(Y) = sum_j g_j Y^j whose coefficients are x-layer elements of `tower`
/// (given by their reduced polynomial representatives).  g must be nonzero.
inline std::vector<TowerElement> roots_in_x_layer(const TowerPtr& tower, std::vector<RatPoly> g_coeffs) {
    while (!g_coeffs.empty() && g_coeffs.back().is_zero()) g_coeffs.pop_back();
    if (g_coeffs.empty()) throw ContractError("roots_in_x_layer: zero polynomial");
    std::vector<TowerElement> roots;
    if (g_coeffs.size() == 1) return roots;

    const RatPoly& f = tower->base_poly();
    if (tower->base_degree() == 1) {
        // x-layer is Q itself: evaluate coefficients at the rational root of f.
        Rational x0 = -f.coeff(0);
        std::vector<Rational> cs;
        for (auto& c : g_coeffs) cs.push_back(c.eval(x0));
        RatPoly g(std::move(cs));
        if (g.is_zero()) throw ContractError("roots_in_x_layer: polynomial vanishes identically");
        for (auto& r : rational_roots(g)) roots.push_back(TowerElement(tower, RatPoly(r)));
        return roots;
    }

    // Make g squarefree over K0 (roots preserved): divide by gcd(g, g').
    {
        std::vector<TowerElement> gk, gk_d;
        for (auto& c : g_coeffs) gk.push_back(TowerElement(tower, c % f));
        for (size_t j = 1; j < gk.size(); ++j) gk_d.push_back(gk[j] * Rational(static_cast<long>(j)));
        auto gcd = tragerdet::k0poly_gcd(gk, gk_d);
        if (gcd.size() > 1) {
            // exact division gk / gcd
            std::vector<TowerElement> q(gk.size() - gcd.size() + 1, TowerElement(Rational(0)));
            std::vector<TowerElement> rem = gk;
            TowerElement lead_inv = gcd.back().inverse();
            while (rem.size() >= gcd.size() && !rem.empty()) {
                TowerElement fac = rem.back() * lead_inv;
                size_t shift = rem.size() - gcd.size();
                q[shift] = fac;
                for (size_t i = 0; i < gcd.size(); ++i) rem[i + shift] = rem[i + shift] - fac * gcd[i];
                while (!rem.empty() && rem.back().is_zero()) rem.pop_back();
            }
            g_coeffs.clear();
            for (auto& c : q) g_coeffs.push_back(c.x_part());
        }
    }

    // Trager: find a shift s so the norm N(Y) = Res_x(f, g(Y - s x)) is squarefree.
    for (long s = 0;; ++s) {
        // compute coefficients of g(Y - s*x) as polynomials in x: expand in Y.
        long degY = static_cast<long>(g_coeffs.size()) - 1;
        std::vector<RatPoly> shifted(static_cast<size_t>(degY) + 1); // coeff of Y^j, in x
        // g(Y - s x) = sum_i g_i(x) (Y - s x)^i
        for (long i = 0; i <= degY; ++i) {
            // (Y - s x)^i: binomial expansion; term Y^j has x-part C(i,j) (-s x)^(i-j)
            for (long j = 0; j <= i; ++j) {
                Rational c(detail::binomial_int(i, j));
                RatPoly xpow = RatPoly::monomial(Rational(1), static_cast<size_t>(i - j));
                Rational sgn = Rational(-s).pow(i - j);
                shifted[static_cast<size_t>(j)] = shifted[static_cast<size_t>(j)] + g_coeffs[static_cast<size_t>(i)] * xpow * (c * sgn);
            }
        }
        RatPoly norm = tragerdet::norm_resultant(f, shifted);
        if (norm.is_zero()) continue;
        if (poly_gcd(norm, norm.derivative()).degree() != 0) continue;

        for (auto& [h, mult] : poly_factor(norm)) {
            // gcd over K0 of g(Y - s x) and h(Y)
            std::vector<TowerElement> gs, hk;
            for (auto& c : shifted) gs.push_back(TowerElement(tower, c % f));
            for (long j = 0; j <= h.degree(); ++j) hk.push_back(TowerElement(tower, RatPoly(h.coeff(static_cast<size_t>(j)))));
            auto d = tragerdet::k0poly_gcd(gs, hk);
            if (d.size() == 2) {
                // monic linear: Y + d0 -> root (in shifted variable) is -d0; undo shift
                TowerElement beta = -d[0];
                TowerElement root = beta - TowerElement::generator_x(tower) * Rational(s);
                roots.push_back(root);
            }
        }
        return roots;
    }
}

/// Roots in the x-layer of a polynomial with rational coefficients.
inline std::vector<TowerElement> roots_in_x_layer(const TowerPtr& tower, const RatPoly& g) {
    std::vector<RatPoly> coeffs;
    for (long j = 0; j <= g.degree(); ++j) coeffs.push_back(RatPoly(g.coeff(static_cast<size_t>(j))));
    return roots_in_x_layer(tower, std::move(coeffs));
}

/// Square roots of an x-layer element inside the x-layer.
inline std::optional<TowerElement> sqrt_in_x_layer(const TowerPtr& tower, const TowerElement& c) {
    if (c.is_zero()) return TowerElement(Rational(0));
    auto roots = roots_in_x_layer(tower, std::vector<RatPoly>{-c.x_part(), RatPoly(), RatPoly::one()});
    if (roots.empty()) return std::nullopt;
    return roots.front();
}

/// Square root of an x-layer element within the full tower (using the
/// quadratic layer if present and needed).
inline std::optional<TowerElement> sqrt_in_tower(const TowerPtr& tower, const TowerElement& c) {
    if (!c.y_part().is_zero())
        throw CapabilityError("sqrt_in_tower: only x-layer radicands are supported");
    if (auto r = sqrt_in_x_layer(tower, c)) return r;
    if (!tower->has_quadratic_layer()) return std::nullopt;
    // K = K0(eta), eta = y + c1/2, eta^2 = c1^2/4 - c0 =: e.  sqrt(c) exists
    // in K \ K0 iff c/e is a square in K0.
    TowerElement c1(tower, tower->quad_c1());
    TowerElement c0(tower, tower->quad_c0());
    TowerElement e = c1 * c1 * Rational(1, 4) - c0;
    if (e.is_zero()) return std::nullopt;
    auto q = sqrt_in_x_layer(tower, c * e.inverse());
    if (!q) return std::nullopt;
    TowerElement eta = TowerElement::generator_y(tower) + c1 * Rational(1, 2);
    return *q * eta;
}

/// Roots of the monic quadratic Y^2 + p*Y + q (x-layer coefficients) within
/// the whole tower.
inline std::vector<TowerElement> quadratic_roots_in_tower(const TowerPtr& tower, const TowerElement& p,
                                                          const TowerElement& q) {
    TowerElement disc = p * p - TowerElement(Rational(4)) * q;
    std::vector<TowerElement> out;
    auto s = sqrt_in_tower(tower, disc);
    if (!s) return out;
    Rational half(1, 2);
    out.push_back((-p + *s) * half);
    if (!s->is_zero()) out.push_back((-p - *s) * half);
    return out;
}

/// All images of `alpha` inside `target` (one per embedding of Q(alpha) into
/// the target tower).  Empty when the minimal polynomial has no root there.
inline std::vector<TowerElement> embed_into_tower(const TowerElement& alpha, const TowerPtr& target) {
    if (auto r = alpha.as_rational()) return {TowerElement(target, RatPoly(*r))};
    if (alpha.tower() == target || alpha.tower()->same_presentation(*target)) return {alpha};
    RatPoly mu = tower_minimal_polynomial(alpha);
    if (mu.degree() == 2 && target->has_quadratic_layer()) {
        return quadratic_roots_in_tower(target, TowerElement(target, RatPoly(mu.coeff(1))),
                                        TowerElement(target, RatPoly(mu.coeff(0))));
    }
    return roots_in_x_layer(target, mu);
}

} // namespace qclocus
