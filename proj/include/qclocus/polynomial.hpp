#pragma once

#include <algorithm>
#include <initializer_list>
#include <iosfwd>
#include <sstream>
#include <vector>

#include "qclocus/intops.hpp"
#include "qclocus/rational.hpp"

namespace qclocus {

/// Dense univariate polynomial over a field K, coefficients lowest-degree
/// first, normalized so the leading coefficient is nonzero.
template <class K>
class Poly {
public:
    Poly() = default;
    Poly(std::initializer_list<K> coeffs) : c_(coeffs) { trim(); }
    explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
    explicit Poly(const K& constant) : c_{constant} { trim(); }

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly{K(1)}; }
    static Poly x() { return Poly{K(0), K(1)}; }

    /// c * x^n
    static Poly monomial(const K& c, size_t n) {
        std::vector<K> v(n + 1, K(0));
        v[n] = c;
        return Poly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; } // -1 for zero
    const std::vector<K>& coeffs() const { return c_; }

    const K& leading() const {
        if (is_zero()) throw ContractError("leading coefficient of zero polynomial");
        return c_.back();
    }

    K coeff(size_t i) const { return i < c_.size() ? c_[i] : K(0); }

    bool is_monic() const { return !is_zero() && leading() == K(1); }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return a.c_ != b.c_; }

    Poly operator-() const {
        Poly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<K> v(std::max(a.c_.size(), b.c_.size()), K(0));
        for (size_t i = 0; i < a.c_.size(); ++i) v[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<K> v(a.c_.size() + b.c_.size() - 1, K(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(v));
    }

    friend Poly operator*(const Poly& a, const K& s) {
        Poly r = a;
        for (auto& c : r.c_) c = c * s;
        r.trim();
        return r;
    }
    friend Poly operator*(const K& s, const Poly& a) { return a * s; }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    /// Euclidean division; requires K a field (or the division to be exact in K).
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw ContractError("polynomial division by zero");
        Poly q, r = a;
        K inv_lead = K(1) / b.leading();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            size_t shift = static_cast<size_t>(r.degree() - b.degree());
            K factor = r.leading() * inv_lead;
            q += Poly::monomial(factor, shift);
            Poly sub = b * factor;
            std::vector<K> rv = r.c_;
            for (size_t i = 0; i < sub.c_.size(); ++i) rv[i + shift] -= sub.c_[i];
            rv.pop_back(); // leading term cancels exactly
            r = Poly(std::move(rv));
        }
        return {q, r};
    }

    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    /// Exact quotient; throws if the remainder is nonzero.
    friend Poly exact_div(const Poly& a, const Poly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw ContractError("exact_div: division is not exact");
        return q;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<K> v(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * K(static_cast<int>(i));
        return Poly(std::move(v));
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * (K(1) / leading());
    }

    /// Horner evaluation at a value of any ring V that mixes with K.
    template <class V>
    V eval(const V& x) const {
        if (is_zero()) return V(0);
        V acc = V(c_.back());
        for (size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + V(c_[i]);
        return acc;
    }

    K operator()(const K& x) const { return eval<K>(x); }

    /// Substitute x -> x + a.
    Poly shift(const K& a) const {
        Poly result;
        Poly lin{a, K(1)};
        for (size_t i = c_.size(); i-- > 0;) result = result * lin + Poly(c_[i]);
        return result;
    }

    std::string str(const char* var = "x") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == K(0)) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << c_[i] << ")";
            if (i >= 1) os << "*" << var;
            if (i >= 2) os << "^" << i;
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == K(0)) c_.pop_back();
    }
    std::vector<K> c_;
};

using RatPoly = Poly<Rational>;

inline RatPoly ratpoly_from_ints(std::initializer_list<long> coeffs) {
    std::vector<Rational> v;
    for (long c : coeffs) v.emplace_back(c);
    return RatPoly(std::move(v));
}

/// Monic gcd over a field.
template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
    while (!b.is_zero()) {
        Poly<K> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

/// lcm of denominators times the polynomial: the primitive integer form.
/// Returns (integer-coefficient poly as RatPoly, scalar s) with p = s * result.
inline std::pair<RatPoly, Rational> rational_to_integer_poly(const RatPoly& p) {
    if (p.is_zero()) return {p, Rational(1)};
    Int den_lcm = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.den().get_mpz_t());
    Int content = 0;
    for (const auto& c : p.coeffs()) {
        Int scaled = c.num() * (den_lcm / c.den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled.get_mpz_t());
    }
    if (content == 0) content = 1;
    std::vector<Rational> v;
    v.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) v.emplace_back(c.num() * (den_lcm / c.den()) / content, Int(1));
    return {RatPoly(std::move(v)), Rational(content, den_lcm)};
}

/// Resultant of two rational polynomials, by evaluation-interpolation on the
/// Sylvester determinant (exact Gaussian elimination over Q).
Rational resultant(const RatPoly& a, const RatPoly& b);

namespace detail {

inline Rational sylvester_det(std::vector<std::vector<Rational>> m) {
    size_t n = m.size();
    Rational det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && m[pivot][col].is_zero()) ++pivot;
        if (pivot == n) return Rational(0);
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        Rational inv = m[col][col].inverse();
        for (size_t row = col + 1; row < n; ++row) {
            if (m[row][col].is_zero()) continue;
            Rational f = m[row][col] * inv;
            for (size_t k = col; k < n; ++k) m[row][k] -= f * m[col][k];
        }
    }
    return det;
}

} // namespace detail

inline Rational resultant(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return Rational(0);
    size_t da = static_cast<size_t>(a.degree()), db = static_cast<size_t>(b.degree());
    if (da == 0) return a.leading().pow(static_cast<long>(db));
    if (db == 0) return b.leading().pow(static_cast<long>(da));
    size_t n = da + db;
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < db; ++i)
        for (size_t j = 0; j <= da; ++j) m[i][i + j] = a.coeff(da - j);
    for (size_t i = 0; i < da; ++i)
        for (size_t j = 0; j <= db; ++j) m[db + i][i + j] = b.coeff(db - j);
    return detail::sylvester_det(std::move(m));
}

} // namespace qclocus
