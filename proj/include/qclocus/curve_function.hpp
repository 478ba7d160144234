#pragma once

#include <vector>

#include "qclocus/polynomial.hpp"
#include "qclocus/weierstrass.hpp"

namespace qclocus {

/// Element of the affine coordinate ring of a Weierstrass curve, in the
/// canonical form A(x) + y*B(x); products reduce y^2 through the curve
/// equation y^2 = (x^3 + a2 x^2 + a4 x + a6) - (a1 x + a3) y.
class CurveFunction {
public:
    CurveFunction() = default;
    CurveFunction(const WeierstrassModel& e, RatPoly a, RatPoly b = RatPoly())
        : a_(std::move(a)), b_(std::move(b)), e_(&e) {}

    static CurveFunction constant(const WeierstrassModel& e, const Rational& c) {
        return CurveFunction(e, RatPoly(c));
    }

    const RatPoly& x_part() const { return a_; }
    const RatPoly& y_part() const { return b_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    friend CurveFunction operator+(const CurveFunction& f, const CurveFunction& g) {
        return CurveFunction(*f.model(g), f.a_ + g.a_, f.b_ + g.b_);
    }
    friend CurveFunction operator-(const CurveFunction& f, const CurveFunction& g) {
        return CurveFunction(*f.model(g), f.a_ - g.a_, f.b_ - g.b_);
    }
    CurveFunction operator-() const { return CurveFunction(*e_, -a_, -b_); }

    friend CurveFunction operator*(const CurveFunction& f, const CurveFunction& g) {
        const WeierstrassModel& e = *f.model(g);
        // (A1 + y B1)(A2 + y B2) = A1 A2 + y (A1 B2 + A2 B1) + y^2 B1 B2
        RatPoly cubic{e.a6(), e.a4(), e.a2(), Rational(1)};
        RatPoly ylin{e.a3(), e.a1()};
        RatPoly bb = f.b_ * g.b_;
        RatPoly a_out = f.a_ * g.a_ + bb * cubic;
        RatPoly b_out = f.a_ * g.b_ + f.b_ * g.a_ - bb * ylin;
        return CurveFunction(e, std::move(a_out), std::move(b_out));
    }

    friend CurveFunction operator*(const CurveFunction& f, const Rational& s) {
        return CurveFunction(*f.e_, f.a_ * s, f.b_ * s);
    }

    friend bool operator==(const CurveFunction& f, const CurveFunction& g) { return f.a_ == g.a_ && f.b_ == g.b_; }

    /// d/dx and d/dy as functions on the curve (partials of the A + yB form).
    CurveFunction partial_x() const { return CurveFunction(*e_, a_.derivative(), b_.derivative()); }
    CurveFunction partial_y() const { return CurveFunction(*e_, b_); }

    /// Evaluate at a point with coordinates in any commutative ring V that
    /// mixes with Rational.
    template <class V>
    V eval(const V& x, const V& y) const {
        V va = a_.is_zero() ? V(0) : a_.template eval<V>(x);
        if (b_.is_zero()) return va;
        return va + y * b_.template eval<V>(x);
    }

private:
    const WeierstrassModel* model(const CurveFunction& other) const {
        return e_ ? e_ : other.e_;
    }
    RatPoly a_, b_;
    const WeierstrassModel* e_ = nullptr;
};

/// Division polynomial table for a fixed model.  Internally keeps the x-parts
/// f_n with the convention psi_n = f_n for n odd and psi_n = psi_2 * f_n for
/// n even, where psi_2 = 2y + a1 x + a3 and psi_2^2 reduces on the curve to
/// Phi(x) = 4x^3 + b2 x^2 + 2 b4 x + b6.
class DivisionPolynomials {
public:
    explicit DivisionPolynomials(const WeierstrassModel& e) : e_(e) {
        auto v = e.invariants();
        phi_ = RatPoly{v.b6, Rational(2) * v.b4, v.b2, Rational(4)};
        f_.resize(5);
        f_[0] = RatPoly();
        f_[1] = RatPoly::one();
        f_[2] = RatPoly::one();
        f_[3] = RatPoly{v.b8, Rational(3) * v.b6, Rational(3) * v.b4, v.b2, Rational(3)};
        f_[4] = RatPoly{v.b4 * v.b8 - v.b6 * v.b6, v.b2 * v.b8 - v.b4 * v.b6, Rational(10) * v.b8,
                        Rational(10) * v.b6, Rational(5) * v.b4, v.b2, Rational(2)};
    }

    const WeierstrassModel& model() const { return e_; }
    const RatPoly& phi() const { return phi_; } // psi_2^2 as a polynomial in x

    /// x-part f_n (see class comment).
    const RatPoly& x_part(long n) {
        if (n < 0) throw ContractError("division polynomial index must be >= 0");
        ensure(n);
        return f_[static_cast<size_t>(n)];
    }

    /// psi_n as a curve function.
    CurveFunction psi(long n) {
        if (n < 1) throw ContractError("division polynomial index must be >= 1");
        const RatPoly& fn = x_part(n);
        if (n % 2 == 1) return CurveFunction(e_, fn);
        RatPoly ylin{e_.a3(), e_.a1()};
        return CurveFunction(e_, ylin * fn, Rational(2) * fn);
    }

    /// psi_{2n} / psi_n, which is regular on the curve: equals psi_2 * E_n for
    /// n odd and E_n for n even, with E_n = f_{n+2} f_{n-1}^2 - f_{n-2} f_{n+1}^2.
    CurveFunction psi2n_over_psin(long n) {
        if (n < 1) throw ContractError("index must be >= 1");
        if (n == 1) return psi(2);
        ensure(n + 2);
        RatPoly en = f_[static_cast<size_t>(n + 2)] * f_[static_cast<size_t>(n - 1)] * f_[static_cast<size_t>(n - 1)] -
                     f_[static_cast<size_t>(n - 2)] * f_[static_cast<size_t>(n + 1)] * f_[static_cast<size_t>(n + 1)];
        if (n % 2 == 1) {
            RatPoly ylin{e_.a3(), e_.a1()};
            return CurveFunction(e_, ylin * en, Rational(2) * en);
        }
        return CurveFunction(e_, en);
    }

    /// x * psi_n^2 - psi_{n-1} psi_{n+1}, the multiplication-by-n numerator;
    /// a polynomial in x alone.
    RatPoly mul_numerator(long n) {
        if (n < 1) throw ContractError("index must be >= 1");
        ensure(n + 1);
        const RatPoly x = RatPoly::x();
        if (n % 2 == 1)
            return x * f_[static_cast<size_t>(n)] * f_[static_cast<size_t>(n)] -
                   phi_ * f_[static_cast<size_t>(n - 1)] * f_[static_cast<size_t>(n + 1)];
        return x * phi_ * f_[static_cast<size_t>(n)] * f_[static_cast<size_t>(n)] -
               f_[static_cast<size_t>(n - 1)] * f_[static_cast<size_t>(n + 1)];
    }

    /// x-polynomial whose roots are the x-coordinates of the points of exact
    /// order n (n >= 2); for n = 2 this is Phi/4 made monic-free, i.e. Phi.
    RatPoly exact_order_x_poly(long n) {
        if (n < 2) throw ContractError("exact_order_x_poly: n must be >= 2");
        auto it = primitive_.find(n);
        if (it != primitive_.end()) return it->second;
        RatPoly result;
        if (n == 2) {
            result = phi_;
        } else {
            result = x_part(n);
            for (long d : divisors(n)) {
                if (d <= 2 || d == n) continue;
                result = exact_div(result, exact_order_x_poly(d));
            }
            // f_n excludes 2-torsion x-coordinates already, so only odd
            // divisors > 2 and even divisors > 2 matter; d = 1, 2 skipped.
        }
        primitive_[n] = result;
        return result;
    }

private:
    void ensure(long n) {
        while (static_cast<long>(f_.size()) <= n) {
            long k = static_cast<long>(f_.size());
            long m = k / 2;
            RatPoly next;
            if (k % 2 == 1) {
                // k = 2m+1
                const RatPoly &fm2 = f_[m + 2], &fm = f_[m], &fm1 = f_[m - 1], &fp1 = f_[m + 1];
                if (m % 2 == 0)
                    next = phi_ * phi_ * fm2 * fm * fm * fm - fm1 * fp1 * fp1 * fp1;
                else
                    next = fm2 * fm * fm * fm - phi_ * phi_ * fm1 * fp1 * fp1 * fp1;
            } else {
                // k = 2m
                const RatPoly &fm2 = f_[m + 2], &fm1 = f_[m - 1], &fm = f_[m], &fmm2 = f_[m - 2], &fp1 = f_[m + 1];
                next = fm * (fm2 * fm1 * fm1 - fmm2 * fp1 * fp1);
            }
            f_.push_back(std::move(next));
        }
    }

    WeierstrassModel e_;
    RatPoly phi_;
    std::vector<RatPoly> f_;
    std::map<long, RatPoly> primitive_;
};

/// psi_2 = 2y + a1 x + a3 as a curve function.
inline CurveFunction psi2_function(const WeierstrassModel& e) {
    return CurveFunction(e, RatPoly{e.a3(), e.a1()}, RatPoly{Rational(2)});
}

/// F = y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6 partials as curve functions.
inline CurveFunction curve_Fx(const WeierstrassModel& e) {
    return CurveFunction(e, RatPoly{-e.a4(), Rational(-2) * e.a2(), Rational(-3)}, RatPoly{e.a1()});
}
inline CurveFunction curve_Fy(const WeierstrassModel& e) { return psi2_function(e); }

} // namespace qclocus
