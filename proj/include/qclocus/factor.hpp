#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "qclocus/fp.hpp"
#include "qclocus/polynomial.hpp"

namespace qclocus {

namespace detail {

// --- Z/p^k polynomial helpers for Hensel lifting -------------------------

using ZkPoly = std::vector<Int>;

inline void zk_trim(ZkPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline ZkPoly zk_reduce(const ZkPoly& f, const Int& m) {
    ZkPoly r(f.size());
    for (size_t i = 0; i < f.size(); ++i) mpz_fdiv_r(r[i].get_mpz_t(), f[i].get_mpz_t(), m.get_mpz_t());
    zk_trim(r);
    return r;
}

inline ZkPoly zk_add(const ZkPoly& a, const ZkPoly& b, const Int& m) {
    ZkPoly r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return zk_reduce(r, m);
}

inline ZkPoly zk_sub(const ZkPoly& a, const ZkPoly& b, const Int& m) {
    ZkPoly r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return zk_reduce(r, m);
}

inline ZkPoly zk_mul(const ZkPoly& a, const ZkPoly& b, const Int& m) {
    if (a.empty() || b.empty()) return {};
    ZkPoly r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return zk_reduce(r, m);
}

/// Division by a polynomial whose leading coefficient is invertible mod m.
inline std::pair<ZkPoly, ZkPoly> zk_divmod(ZkPoly a, const ZkPoly& b, const Int& m) {
    if (b.empty()) throw ContractError("zk_divmod: division by zero");
    Int lead_inv;
    if (mpz_invert(lead_inv.get_mpz_t(), b.back().get_mpz_t(), m.get_mpz_t()) == 0)
        throw ContractError("zk_divmod: leading coefficient not invertible");
    ZkPoly q;
    a = zk_reduce(a, m);
    while (a.size() >= b.size() && !a.empty()) {
        size_t shift = a.size() - b.size();
        Int f = (a.back() * lead_inv) % m;
        if (q.size() < shift + 1) q.resize(shift + 1, Int(0));
        q[shift] = (q[shift] + f) % m;
        for (size_t i = 0; i < b.size(); ++i) {
            a[i + shift] -= f * b[i];
            mpz_fdiv_r(a[i + shift].get_mpz_t(), a[i + shift].get_mpz_t(), m.get_mpz_t());
        }
        zk_trim(a);
    }
    zk_trim(q);
    return {q, a};
}

inline ZkPoly fp_to_zk(const FpPoly& f) {
    ZkPoly r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = Int(static_cast<unsigned long>(f[i]));
    return r;
}

/// Center coefficients into (-m/2, m/2].
inline std::vector<Int> zk_symmetric(const ZkPoly& f, const Int& m) {
    std::vector<Int> r(f.size());
    Int half = m / 2;
    for (size_t i = 0; i < f.size(); ++i) r[i] = f[i] > half ? f[i] - m : f[i];
    return r;
}

/// One quadratic Hensel step: from f = A*B (mod m), s*A + t*B = 1 (mod m),
/// B monic, to the same data mod m^2.
struct HenselPair {
    ZkPoly a, b, s, t;
};

inline void hensel_step(const ZkPoly& f, HenselPair& hp, const Int& m) {
    Int m2 = m * m;
    ZkPoly e = zk_sub(zk_reduce(f, m2), zk_mul(hp.a, hp.b, m2), m2);
    auto [q, r] = zk_divmod(zk_mul(hp.s, e, m2), hp.b, m2);
    ZkPoly a2 = zk_add(zk_add(hp.a, zk_mul(hp.t, e, m2), m2), zk_mul(q, hp.a, m2), m2);
    ZkPoly b2 = zk_add(hp.b, r, m2);
    ZkPoly err = zk_sub(zk_add(zk_mul(hp.s, a2, m2), zk_mul(hp.t, b2, m2), m2), ZkPoly{Int(1)}, m2);
    auto [c, d] = zk_divmod(zk_mul(hp.s, err, m2), b2, m2);
    hp.s = zk_sub(hp.s, d, m2);
    hp.t = zk_sub(zk_sub(hp.t, zk_mul(hp.t, err, m2), m2), zk_mul(c, a2, m2), m2);
    hp.a = std::move(a2);
    hp.b = std::move(b2);
}

/// Recursively split f (with lc(f) = b mod target, p coprime to b) into monic
/// lifts of the given mod-p factors, working modulo `target` = p^k.
inline void hensel_split(const ZkPoly& f, const std::vector<FpPoly>& factors, size_t lo, size_t hi,
                         const FpCtx& F, const Int& p, const Int& target,
                         std::vector<ZkPoly>& out) {
    if (hi - lo == 1) {
        // monicize f mod target
        Int inv;
        if (mpz_invert(inv.get_mpz_t(), f.back().get_mpz_t(), target.get_mpz_t()) == 0)
            throw ContractError("hensel_split: non-invertible leading coefficient");
        ZkPoly g(f.size());
        for (size_t i = 0; i < f.size(); ++i) g[i] = (f[i] * inv) % target;
        out.push_back(zk_reduce(g, target));
        return;
    }
    size_t mid = lo + (hi - lo) / 2;
    FpPoly a0{static_cast<uint64_t>(mpz_fdiv_ui(f.back().get_mpz_t(), F.p))};
    for (size_t i = lo; i < mid; ++i) a0 = fpops::mul(F, a0, factors[i]);
    FpPoly b0{1};
    for (size_t i = mid; i < hi; ++i) b0 = fpops::mul(F, b0, factors[i]);
    auto [g, s, t] = fpops::xgcd(F, a0, b0);
    if (fpops::deg(g) != 0) throw ContractError("hensel_split: factors not coprime mod p");

    HenselPair hp{fp_to_zk(a0), fp_to_zk(b0), fp_to_zk(s), fp_to_zk(t)};
    Int m = p;
    while (m < target) {
        hensel_step(zk_reduce(f, m * m), hp, m);
        m *= m;
    }
    // Force the exact leading coefficient of the left part (B is monic).
    hp.a = zk_reduce(hp.a, target);
    hp.b = zk_reduce(hp.b, target);
    if (!hp.a.empty()) hp.a.back() = f.back() % target;
    hensel_split(hp.a, factors, lo, mid, F, p, target, out);
    hensel_split(hp.b, factors, mid, hi, F, p, target, out);
}

inline Int poly_l2_norm_bound(const std::vector<Int>& coeffs) {
    Int s = 0;
    for (const auto& c : coeffs) s += c * c;
    Int root = isqrt(s);
    if (root * root < s) root += 1;
    return root;
}

inline Int binomial_int(long n, long k) {
    if (k < 0 || k > n) return 0;
    Int r = 1;
    if (k > n - k) k = n - k;
    for (long i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

inline std::vector<Int> to_int_coeffs(const RatPoly& p) {
    std::vector<Int> v;
    v.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) {
        if (!c.is_integer()) throw ContractError("expected integer polynomial");
        v.push_back(c.num());
    }
    return v;
}

inline RatPoly from_int_coeffs(const std::vector<Int>& v) {
    std::vector<Rational> r;
    r.reserve(v.size());
    for (const auto& c : v) r.emplace_back(c);
    return RatPoly(std::move(r));
}

inline std::vector<Int> int_primitive_part(std::vector<Int> v) {
    Int content = 0;
    for (const auto& c : v) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    if (content == 0) return v;
    if (!v.empty() && v.back() < 0) content = -content;
    for (auto& c : v) c /= content;
    return v;
}

/// Zassenhaus factorization of a primitive squarefree integer polynomial
/// (given as a RatPoly with integer coefficients, degree >= 1).
/// Returns primitive integer irreducible factors.
inline std::vector<RatPoly> zassenhaus(const RatPoly& poly) {
    long n = poly.degree();
    if (n == 1) return {poly};
    std::vector<Int> f = to_int_coeffs(poly);
    Int lc = f.back();

    // Prime selection: smallest odd primes keeping f squarefree; among the
    // first few usable ones take the one with the fewest modular factors.
    struct Choice {
        FpCtx F;
        std::vector<FpPoly> factors;
    };
    std::vector<Choice> choices;
    for (Int p = 3; choices.size() < 4; p = next_prime(p)) {
        if (mpz_divisible_p(lc.get_mpz_t(), p.get_mpz_t())) continue;
        FpCtx F{p.get_ui()};
        FpPoly fp(f.size());
        for (size_t i = 0; i < f.size(); ++i)
            fp[i] = mpz_fdiv_ui(f[i].get_mpz_t(), F.p);
        fpops::trim(fp);
        if (fpops::deg(fp) != n) continue;
        if (fpops::deg(fpops::gcd(F, fp, fpops::derivative(F, fp))) != 0) continue;
        choices.push_back({F, factor_squarefree_mod_p(F, fpops::monic(F, fp))});
        if (choices.back().factors.size() == 1) return {poly}; // irreducible
    }
    auto& best = *std::min_element(choices.begin(), choices.end(),
                                   [](const Choice& a, const Choice& b) { return a.factors.size() < b.factors.size(); });
    // Deterministic ordering of the modular factors.
    std::sort(best.factors.begin(), best.factors.end());

    // Lift to p^k beyond twice the Mignotte bound (scaled by |lc|).
    Int bound = 2 * ::abs(lc) * binomial_int(n, n / 2) * poly_l2_norm_bound(f) + 1;
    Int p(static_cast<unsigned long>(best.F.p));
    Int target = p;
    while (target < bound) target *= p;

    std::vector<ZkPoly> lifted;
    hensel_split(zk_reduce(ZkPoly(f.begin(), f.end()), target), best.factors, 0, best.factors.size(),
                 best.F, p, target, lifted);

    // Factor recombination: try subsets by increasing cardinality.
    std::vector<RatPoly> result;
    std::vector<size_t> live(lifted.size());
    for (size_t i = 0; i < live.size(); ++i) live[i] = i;
    std::vector<Int> f_rem = f;

    auto try_subset = [&](const std::vector<size_t>& subset) -> bool {
        ZkPoly prod{f_rem.back() % target};
        for (size_t idx : subset) prod = zk_mul(prod, lifted[idx], target);
        std::vector<Int> cand = int_primitive_part(zk_symmetric(prod, target));
        RatPoly candidate = from_int_coeffs(cand);
        RatPoly remainder = from_int_coeffs(f_rem);
        auto [q, r] = divmod(remainder, candidate);
        if (!r.is_zero()) return false;
        // The quotient of two primitive integer polynomials dividing exactly
        // is again integral up to content; renormalize.
        result.push_back(candidate);
        auto [qint, qscale] = rational_to_integer_poly(q);
        f_rem = int_primitive_part(to_int_coeffs(qint));
        (void)qscale;
        return true;
    };

    size_t card = 1;
    while (live.size() > 0 && card <= live.size() / 2) {
        std::vector<size_t> pick(card);
        for (size_t i = 0; i < card; ++i) pick[i] = i;
        bool removed = false;
        for (;;) {
            std::vector<size_t> subset(card);
            long degree_sum = 0;
            for (size_t i = 0; i < card; ++i) {
                subset[i] = live[pick[i]];
                degree_sum += fpops::deg(best.factors[subset[i]]);
            }
            if (degree_sum <= static_cast<long>(from_int_coeffs(f_rem).degree()) && try_subset(subset)) {
                std::vector<size_t> next_live;
                for (size_t idx : live)
                    if (std::find(subset.begin(), subset.end(), idx) == subset.end()) next_live.push_back(idx);
                live = std::move(next_live);
                removed = true;
                break;
            }
            // next combination
            long i = static_cast<long>(card) - 1;
            while (i >= 0 && pick[i] == live.size() - card + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (size_t j = i + 1; j < card; ++j) pick[j] = pick[j - 1] + 1;
        }
        if (!removed) ++card;
    }
    if (from_int_coeffs(f_rem).degree() > 0) result.push_back(from_int_coeffs(int_primitive_part(f_rem)));
    return result;
}

} // namespace detail

/// Squarefree decomposition over Q (Yun): returns [(squarefree factor, multiplicity)]
/// with product of factor^multiplicity equal to p up to a rational constant.
inline std::vector<std::pair<RatPoly, long>> squarefree_decomposition(const RatPoly& p) {
    if (p.is_zero()) throw ContractError("squarefree decomposition of zero");
    std::vector<std::pair<RatPoly, long>> out;
    RatPoly f = p.monic();
    if (f.degree() == 0) return out;

    // Fast path: if f stays squarefree mod some good prime, it is squarefree
    // over Q and the expensive rational Euclid run is skipped.
    {
        auto [ipoly, scale] = rational_to_integer_poly(f);
        (void)scale;
        std::vector<Int> fi = detail::to_int_coeffs(ipoly);
        int tried = 0;
        for (Int q = 3; tried < 8; q = next_prime(q)) {
            if (mpz_divisible_p(fi.back().get_mpz_t(), q.get_mpz_t())) continue;
            ++tried;
            FpCtx F{q.get_ui()};
            FpPoly fq(fi.size());
            for (size_t i = 0; i < fi.size(); ++i) fq[i] = mpz_fdiv_ui(fi[i].get_mpz_t(), F.p);
            fpops::trim(fq);
            if (fpops::deg(fq) != f.degree()) continue;
            if (fpops::deg(fpops::gcd(F, fq, fpops::derivative(F, fq))) == 0) {
                out.emplace_back(f, 1);
                return out;
            }
        }
    }

    RatPoly fp = f.derivative();
    RatPoly g = poly_gcd(f, fp);
    if (g.degree() == 0) {
        out.emplace_back(f, 1);
        return out;
    }
    RatPoly w = exact_div(f, g);
    RatPoly y = exact_div(fp, g);
    RatPoly z = y - w.derivative();
    long i = 1;
    while (w.degree() > 0) {
        RatPoly a = poly_gcd(w, z);
        if (a.degree() > 0) out.emplace_back(a.monic(), i);
        w = exact_div(w, a);
        y = exact_div(z, a);
        z = y - w.derivative();
        ++i;
    }
    return out;
}

/// Factorization over Q: monic irreducible factors with multiplicities.
/// The product of factors^multiplicities equals p up to a rational constant.
inline std::vector<std::pair<RatPoly, long>> poly_factor(const RatPoly& p) {
    if (p.is_zero()) throw ContractError("poly_factor: zero polynomial");
    std::vector<std::pair<RatPoly, long>> out;
    for (auto& [sqfree, mult] : squarefree_decomposition(p)) {
        auto [ipoly, scale] = rational_to_integer_poly(sqfree);
        (void)scale;
        for (auto& irr : detail::zassenhaus(ipoly)) out.emplace_back(irr.monic(), mult);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        const auto& ca = a.first.coeffs();
        const auto& cb = b.first.coeffs();
        for (size_t i = ca.size(); i-- > 0;) {
            if (ca[i] != cb[i]) return ca[i] < cb[i];
        }
        return false;
    });
    return out;
}

/// Rational roots of p, via the degree-1 factors.
inline std::vector<Rational> rational_roots(const RatPoly& p) {
    std::vector<Rational> roots;
    for (auto& [f, mult] : poly_factor(p))
        if (f.degree() == 1) roots.push_back(-f.coeff(0));
    return roots;
}

} // namespace qclocus
