#pragma once

#include <algorithm>
#include <sstream>
#include <vector>

#include "qclocus/rational.hpp"

namespace qclocus {

/// Truncated Laurent series over a coefficient ring K: coefficients for the
/// exponents lead .. prec-1, where prec marks the first untracked exponent.
/// The leading stored coefficient is nonzero unless the series is zero to the
/// stated precision.
template <class K>
class LaurentSeries {
public:
    static constexpr long kExactPrecision = 1L << 40;

    LaurentSeries() : lead_(0), prec_(kExactPrecision) {} // exact zero

    LaurentSeries(int c) : LaurentSeries(K(c)) {}
    LaurentSeries(const K& c) : lead_(0), prec_(kExactPrecision) {
        if (!(c == K(0))) coeffs_.push_back(c);
        normalize();
    }

    LaurentSeries(long lead, std::vector<K> coeffs, long prec)
        : lead_(lead), coeffs_(std::move(coeffs)), prec_(prec) {
        normalize();
    }

    static LaurentSeries monomial(const K& c, long exponent, long prec = kExactPrecision) {
        return LaurentSeries(exponent, {c}, prec);
    }
    static LaurentSeries t(long prec = kExactPrecision) { return monomial(K(1), 1, prec); }

    long precision() const { return prec_; }
    bool is_zero_to_precision() const { return coeffs_.empty(); }

    long leading_exponent() const {
        if (coeffs_.empty()) throw PrecisionError("LaurentSeries: zero to stated precision");
        return lead_;
    }
    const K& leading_coefficient() const {
        if (coeffs_.empty()) throw PrecisionError("LaurentSeries: zero to stated precision");
        return coeffs_.front();
    }

    K coefficient(long exponent) const {
        if (exponent >= prec_) throw PrecisionError("LaurentSeries: coefficient beyond precision");
        if (coeffs_.empty() || exponent < lead_ || exponent >= lead_ + static_cast<long>(coeffs_.size()))
            return K(0);
        return coeffs_[static_cast<size_t>(exponent - lead_)];
    }

    LaurentSeries truncate(long new_prec) const {
        if (new_prec >= prec_) return *this;
        std::vector<K> c;
        for (long e = lead_; e < new_prec && e < lead_ + static_cast<long>(coeffs_.size()); ++e)
            c.push_back(coeffs_[static_cast<size_t>(e - lead_)]);
        return LaurentSeries(lead_, std::move(c), new_prec);
    }

    LaurentSeries operator-() const {
        LaurentSeries r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
        long prec = std::min(a.prec_, b.prec_);
        long lo = std::min(a.coeffs_.empty() ? prec : a.lead_, b.coeffs_.empty() ? prec : b.lead_);
        if (lo >= prec) return LaurentSeries(prec, {}, prec);
        std::vector<K> c(static_cast<size_t>(prec - lo), K(0));
        auto acc = [&](const LaurentSeries& s) {
            for (size_t i = 0; i < s.coeffs_.size(); ++i) {
                long e = s.lead_ + static_cast<long>(i);
                if (e < prec) c[static_cast<size_t>(e - lo)] += s.coeffs_[i];
            }
        };
        acc(a);
        acc(b);
        return LaurentSeries(lo, std::move(c), prec);
    }

    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        if (a.coeffs_.empty() || b.coeffs_.empty()) {
            // 0 * x is 0, but precision is limited by the zero side's window
            long prec = std::min({combine_prec(a.prec_, b.effective_lead()),
                                  combine_prec(b.prec_, a.effective_lead())});
            return LaurentSeries(prec, {}, prec);
        }
        long lead = a.lead_ + b.lead_;
        long prec = std::min(combine_prec(a.prec_, b.lead_), combine_prec(b.prec_, a.lead_));
        long terms = prec - lead;
        if (terms <= 0) return LaurentSeries(prec, {}, prec);
        std::vector<K> c(static_cast<size_t>(terms), K(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (static_cast<long>(i) >= terms) break;
            for (size_t j = 0; j < b.coeffs_.size() && static_cast<long>(i + j) < terms; ++j)
                c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return LaurentSeries(lead, std::move(c), prec);
    }

    LaurentSeries& operator+=(const LaurentSeries& o) { return *this = *this + o; }
    LaurentSeries& operator-=(const LaurentSeries& o) { return *this = *this - o; }
    LaurentSeries& operator*=(const LaurentSeries& o) { return *this = *this * o; }

    /// Multiplicative inverse; the series must be nonzero to its precision.
    LaurentSeries inverse() const {
        if (coeffs_.empty()) throw PrecisionError("LaurentSeries: inverting a series that is zero to precision");
        K lead_inv = K(1) / coeffs_.front();
        if (prec_ >= kExactPrecision) {
            if (coeffs_.size() == 1) return monomial(lead_inv, -lead_);
            throw PrecisionError("LaurentSeries: inverse of an exact non-monomial series; truncate first");
        }
        long rel = prec_ - lead_; // known terms
        std::vector<K> inv(static_cast<size_t>(rel), K(0));
        inv[0] = lead_inv;
        for (size_t k = 1; k < inv.size(); ++k) {
            // coefficient of t^(k - lead) in the inverse:
            K s = K(0);
            for (size_t j = 1; j <= k && j < coeffs_.size(); ++j) s += coeffs_[j] * inv[k - j];
            inv[k] = -(lead_inv * s);
        }
        return LaurentSeries(-lead_, std::move(inv), prec_ - 2 * lead_);
    }

    friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) { return a * b.inverse(); }

    LaurentSeries derivative() const {
        std::vector<K> c(coeffs_.size());
        for (size_t i = 0; i < coeffs_.size(); ++i)
            c[i] = coeffs_[i] * K(static_cast<int>(lead_ + static_cast<long>(i)));
        long prec = prec_ >= kExactPrecision ? kExactPrecision : prec_ - 1;
        return LaurentSeries(lead_ - 1, std::move(c), prec);
    }

    /// Multiply by t^k.
    LaurentSeries shift(long k) const {
        long prec = prec_ >= kExactPrecision ? kExactPrecision : prec_ + k;
        return LaurentSeries(lead_ + k, coeffs_, prec);
    }

    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
        long prec = std::min(a.prec_, b.prec_);
        LaurentSeries d = (a - b).truncate(prec);
        return d.coeffs_.empty();
    }

    std::string str() const {
        std::ostringstream os;
        if (coeffs_.empty()) {
            os << "O(t^" << prec_ << ")";
            return os.str();
        }
        bool first = true;
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == K(0)) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << coeffs_[i] << ")*t^" << lead_ + static_cast<long>(i);
        }
        if (prec_ < kExactPrecision) os << " + O(t^" << prec_ << ")";
        return os.str();
    }

private:
    static long combine_prec(long p, long shift) {
        if (p >= kExactPrecision) return kExactPrecision;
        return p + shift;
    }
    long effective_lead() const { return coeffs_.empty() ? 0 : lead_; }

    void normalize() {
        while (!coeffs_.empty() && coeffs_.front() == K(0)) {
            coeffs_.erase(coeffs_.begin());
            ++lead_;
        }
        if (prec_ < kExactPrecision) {
            while (lead_ + static_cast<long>(coeffs_.size()) > prec_) coeffs_.pop_back();
        }
        while (!coeffs_.empty() && coeffs_.back() == K(0)) coeffs_.pop_back();
        if (coeffs_.empty()) lead_ = 0;
    }

    long lead_;
    std::vector<K> coeffs_;
    long prec_;
};

} // namespace qclocus
