#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "qclocus/intops.hpp"
#include "qclocus/tower.hpp"

namespace qclocus {

/// Exponent map of an element of Q (x) Q^x: prime -> rational exponent,
/// zero exponents never stored.  Sign and roots of unity carry no data here.
class PrimeExponentMap {
public:
    PrimeExponentMap() = default;

    void add(const Int& p, const Rational& e) {
        if (e.is_zero()) return;
        auto it = map_.find(p);
        if (it == map_.end()) {
            map_.emplace(p, e);
        } else {
            it->second += e;
            if (it->second.is_zero()) map_.erase(it);
        }
    }

    Rational exponent(const Int& p) const {
        auto it = map_.find(p);
        return it == map_.end() ? Rational(0) : it->second;
    }

    const std::map<Int, Rational>& entries() const { return map_; }
    bool empty() const { return map_.empty(); }

    friend bool operator==(const PrimeExponentMap& a, const PrimeExponentMap& b) { return a.map_ == b.map_; }

    std::string str() const {
        std::ostringstream os;
        os << "{";
        bool first = true;
        for (auto& [p, e] : map_) {
            if (!first) os << ", ";
            first = false;
            os << p.get_str() << " -> " << e;
        }
        os << "}";
        return os.str();
    }

private:
    std::map<Int, Rational> map_;
};

/// Formal finite product prod base_i^(e_i) with bases in number towers and
/// rational exponents: the computational stand-in for an element of Q (x) Kbar^x.
class FormalRadical {
public:
    struct Factor {
        TowerElement base;
        Rational exponent;
    };

    FormalRadical() = default; // empty product = 1

    static FormalRadical one() { return FormalRadical(); }

    static FormalRadical of(TowerElement base, Rational exponent) {
        FormalRadical r;
        r.multiply(std::move(base), std::move(exponent));
        return r;
    }

    static FormalRadical of_rational(const Rational& base, Rational exponent) {
        return of(TowerElement(base), std::move(exponent));
    }

    /// Append base^exponent; zero exponents normalize away, zero bases reject.
    void multiply(TowerElement base, Rational exponent) {
        if (base.is_zero()) throw ContractError("FormalRadical: zero base");
        if (exponent.is_zero()) return;
        factors_.push_back({std::move(base), std::move(exponent)});
    }

    FormalRadical operator*(const FormalRadical& o) const {
        FormalRadical r = *this;
        for (auto& f : o.factors_) r.factors_.push_back(f);
        return r;
    }

    FormalRadical inverse() const {
        FormalRadical r;
        for (auto& f : factors_) r.factors_.push_back({f.base, -f.exponent});
        return r;
    }

    FormalRadical pow(const Rational& e) const {
        if (e.is_zero()) return FormalRadical();
        FormalRadical r;
        for (auto& f : factors_) r.factors_.push_back({f.base, f.exponent * e});
        return r;
    }

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_trivial_product() const { return factors_.empty(); }

    std::string str() const {
        if (factors_.empty()) return "1";
        std::ostringstream os;
        bool first = true;
        for (auto& f : factors_) {
            if (!first) os << " * ";
            first = false;
            os << f.base.str() << "^(" << f.exponent << ")";
        }
        return os.str();
    }

private:
    std::vector<Factor> factors_;
};

namespace radical_detail {

/// Collapsed factor group: one tower element raised to 1/denominator.
struct CollapsedBase {
    TowerElement base; // = prod base_i^(e_i * denom), integral exponents
    Int denom;         // common positive denominator
};

/// Group same-tower factors together and clear their exponent denominators.
inline std::vector<CollapsedBase> collapse_by_tower(const FormalRadical& r) {
    std::vector<CollapsedBase> groups;
    for (const auto& f : r.factors()) {
        // locate the group for this factor's tower
        CollapsedBase* grp = nullptr;
        bool rational = f.base.is_rational();
        for (auto& g : groups) {
            bool g_rational = g.base.is_rational();
            if (rational && g_rational) { grp = &g; break; }
            if (!rational && !g_rational &&
                f.base.tower()->same_presentation(*g.base.tower())) { grp = &g; break; }
        }
        if (!grp) {
            groups.push_back({TowerElement(Rational(1)), Int(1)});
            grp = &groups.back();
            if (!rational) grp->base = TowerElement(f.base.tower(), RatPoly::one());
        }
        // bring the group to the common denominator with the new factor
        Int d = f.exponent.den();
        Int g;
        mpz_gcd(g.get_mpz_t(), grp->denom.get_mpz_t(), d.get_mpz_t());
        Int lcm = grp->denom / g * d;
        Int scale_old = lcm / grp->denom;
        grp->base = grp->base.pow(scale_old);
        grp->denom = lcm;
        Int e_scaled = f.exponent.num() * (lcm / d);
        grp->base = grp->base * f.base.pow(e_scaled);
    }
    return groups;
}

/// Exponent search: least m with phi(m) <= fac(d) and base^m rational, if any.
/// Throws CapabilityError when the candidate list would exceed the cap.
inline std::optional<std::pair<long, Rational>> rational_power(const TowerElement& base, long candidate_cap) {
    if (auto q = base.as_rational()) return std::make_pair(1L, *q);
    long d = tower_minimal_polynomial(base).degree();
    long budget = 1;
    for (long i = 2; i <= d; ++i) {
        budget *= i;
        if (budget > 1'000'000) break; // phi bound saturates far below this
    }
    // enumerate m ascending with phi(m) <= d!
    long count = 0;
    TowerElement power(Rational(1));
    long last_m = 0;
    long scan_limit = budget <= 30 ? 2 * budget * budget + 1 : 200'000;
    for (long m = 1; m <= scan_limit; ++m) {
        if (euler_phi(m) > budget) continue;
        if (++count > candidate_cap)
            throw CapabilityError("rational_power: exponent search exceeded candidate budget for degree " +
                                  std::to_string(d));
        for (long k = last_m; k < m; ++k) power = power * base;
        last_m = m;
        if (auto q = power.as_rational()) {
            if (q->is_zero()) throw ContractError("rational_power: zero base");
            return std::make_pair(m, *q);
        }
    }
    return std::nullopt;
}

} // namespace radical_detail

/// Decides membership of r in Q (x) Q^x inside Q (x) Qbar^x and returns its
/// prime-exponent expansion on success.  Signs and roots of unity are torsion
/// and never contribute.
inline std::optional<PrimeExponentMap> radical_rational_part(const FormalRadical& r, long candidate_cap = 512) {
    PrimeExponentMap out;
    for (auto& group : radical_detail::collapse_by_tower(r)) {
        auto hit = radical_detail::rational_power(group.base, candidate_cap);
        if (!hit) return std::nullopt;
        auto [m, q] = *hit;
        // group value = q^(1/(m*denom)); expand |q| into primes
        Rational scale(Int(1), Int(m) * group.denom);
        Rational aq = q.abs();
        if (aq.is_one()) continue; // pure torsion
        for (auto& [p, e] : factor_integer(aq.num())) out.add(p, Rational(e) * scale);
        for (auto& [p, e] : factor_integer(aq.den())) out.add(p, Rational(-e) * scale);
    }
    return out;
}

/// Exponent at a prime, 0 when absent.
inline Rational radical_valuation(const PrimeExponentMap& m, const Int& ell) {
    if (!is_prime(ell)) throw ContractError("radical_valuation: modulus must be prime");
    return m.exponent(ell);
}

namespace radical_detail {

/// Collapse r completely into a single tower element gamma with r = gamma^(1/L),
/// embedding all bases into one common tower.  Returns every embedding choice.
inline std::vector<TowerElement> collapse_to_common_tower(const FormalRadical& r, Int* denom_out) {
    auto groups = collapse_by_tower(r);
    Int L = 1;
    for (auto& g : groups) {
        Int gg;
        mpz_gcd(gg.get_mpz_t(), L.get_mpz_t(), g.denom.get_mpz_t());
        L = L / gg * g.denom;
    }
    *denom_out = L;
    // choose the highest-degree tower as the ambient one
    TowerPtr ambient = NumberTower::rationals();
    for (auto& g : groups)
        if (!g.base.is_rational() && g.base.tower()->degree() > ambient->degree()) ambient = g.base.tower();

    std::vector<TowerElement> results{TowerElement(ambient, RatPoly::one())};
    for (auto& g : groups) {
        TowerElement powered = g.base.pow(L / g.denom);
        std::vector<TowerElement> images;
        if (powered.is_rational()) {
            images.push_back(TowerElement(ambient, RatPoly(*powered.as_rational())));
        } else {
            images = embed_into_tower(powered, ambient);
            if (images.empty())
                throw CapabilityError("radical comparison: no embedding of " +
                                      powered.tower()->str() + " into " + ambient->str());
        }
        std::vector<TowerElement> next;
        for (auto& acc : results)
            for (auto& im : images) next.push_back(acc * im);
        results = std::move(next);
    }
    return results;
}

} // namespace radical_detail

/// True iff r1/r2 is trivial in Q (x) Qbar^x: clearing exponent denominators
/// must leave a root of unity.  When bases live in distinct towers, the
/// comparison holds if some embedding into a common tower makes it hold.
inline bool radical_equal(const FormalRadical& r1, const FormalRadical& r2) {
    FormalRadical ratio = r1 * r2.inverse();
    if (ratio.is_trivial_product()) return true;
    Int L;
    for (auto& gamma : radical_detail::collapse_to_common_tower(ratio, &L)) {
        if (gamma.is_zero()) throw ContractError("radical_equal: zero base");
        if (is_root_of_unity(gamma).has_value()) return true;
    }
    return false;
}

} // namespace qclocus
