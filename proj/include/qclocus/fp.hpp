#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <tuple>
#include <vector>

#include "qclocus/errors.hpp"

namespace qclocus {

/// Arithmetic modulo a small odd prime p (machine word), plus the dense
/// polynomial operations needed by the factorization pipeline.
struct FpCtx {
    uint64_t p;

    uint64_t add(uint64_t a, uint64_t b) const { uint64_t s = a + b; return s >= p ? s - p : s; }
    uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p - b; }
    uint64_t mul(uint64_t a, uint64_t b) const {
        return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % p);
    }
    uint64_t neg(uint64_t a) const { return a == 0 ? 0 : p - a; }
    uint64_t pow(uint64_t a, uint64_t e) const {
        uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    uint64_t inv(uint64_t a) const {
        if (a == 0) throw ContractError("Fp: inverse of zero");
        return pow(a, p - 2);
    }
};

/// Dense polynomial over F_p, lowest degree first, trimmed.
using FpPoly = std::vector<uint64_t>;

namespace fpops {

inline void trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline long deg(const FpPoly& f) { return static_cast<long>(f.size()) - 1; }

inline FpPoly add(const FpCtx& F, const FpPoly& a, const FpPoly& b) {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
    trim(r);
    return r;
}

inline FpPoly sub(const FpCtx& F, const FpPoly& a, const FpPoly& b) {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
    trim(r);
    return r;
}

inline FpPoly mul(const FpCtx& F, const FpPoly& a, const FpPoly& b) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

inline FpPoly scale(const FpCtx& F, const FpPoly& a, uint64_t s) {
    FpPoly r = a;
    for (auto& c : r) c = F.mul(c, s);
    trim(r);
    return r;
}

inline std::pair<FpPoly, FpPoly> divmod(const FpCtx& F, FpPoly a, const FpPoly& b) {
    if (b.empty()) throw ContractError("FpPoly: division by zero");
    FpPoly q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, 0);
    uint64_t lead_inv = F.inv(b.back());
    while (deg(a) >= deg(b)) {
        size_t shift = a.size() - b.size();
        uint64_t f = F.mul(a.back(), lead_inv);
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i)
            a[i + shift] = F.sub(a[i + shift], F.mul(f, b[i]));
        trim(a);
    }
    trim(q);
    return {q, a};
}

inline FpPoly mod(const FpCtx& F, const FpPoly& a, const FpPoly& b) {
    return divmod(F, a, b).second;
}

inline FpPoly monic(const FpCtx& F, const FpPoly& a) {
    if (a.empty()) return a;
    return scale(F, a, F.inv(a.back()));
}

inline FpPoly gcd(const FpCtx& F, FpPoly a, FpPoly b) {
    while (!b.empty()) {
        FpPoly r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}

inline FpPoly derivative(const FpCtx& F, const FpPoly& a) {
    if (a.size() <= 1) return {};
    FpPoly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], i % F.p);
    trim(r);
    return r;
}

inline FpPoly powmod(const FpCtx& F, FpPoly base, uint64_t e, const FpPoly& m) {
    FpPoly r{1};
    base = mod(F, base, m);
    while (e) {
        if (e & 1) r = mod(F, mul(F, r, base), m);
        base = mod(F, mul(F, base, base), m);
        e >>= 1;
    }
    return r;
}

/// x^(p^k) reduced mod m, by iterating Frobenius.
inline FpPoly frobenius_power(const FpCtx& F, const FpPoly& m, int k) {
    FpPoly xp{0, 1};
    for (int i = 0; i < k; ++i) xp = powmod(F, xp, F.p, m);
    return xp;
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
inline std::tuple<FpPoly, FpPoly, FpPoly> xgcd(const FpCtx& F, FpPoly a, FpPoly b) {
    FpPoly s0{1}, s1{}, t0{}, t1{1};
    while (!b.empty()) {
        auto [q, r] = divmod(F, a, b);
        a = std::move(b);
        b = std::move(r);
        FpPoly s2 = sub(F, s0, mul(F, q, s1));
        FpPoly t2 = sub(F, t0, mul(F, q, t1));
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (a.empty()) return {a, s0, t0};
    uint64_t c = F.inv(a.back());
    return {scale(F, a, c), scale(F, s0, c), scale(F, t0, c)};
}

} // namespace fpops

/// Cantor-Zassenhaus factorization of a squarefree monic polynomial over F_p
/// (p odd).  Deterministically seeded so runs are reproducible.
inline std::vector<FpPoly> factor_squarefree_mod_p(const FpCtx& F, const FpPoly& f) {
    using namespace fpops;
    std::vector<FpPoly> result;
    // Distinct-degree split.
    std::vector<std::pair<FpPoly, int>> stages; // (product of irreducibles of degree d, d)
    FpPoly rem = monic(F, f);
    FpPoly xq{0, 1};
    for (int d = 1; deg(rem) >= 2 * d; ++d) {
        xq = powmod(F, xq, F.p, rem);
        FpPoly g = gcd(F, sub(F, xq, FpPoly{0, 1}), rem);
        if (deg(g) > 0) {
            stages.emplace_back(g, d);
            rem = divmod(F, rem, g).first;
            xq = mod(F, xq, rem);
        }
    }
    if (deg(rem) > 0) stages.emplace_back(rem, static_cast<int>(deg(rem)));

    std::mt19937_64 rng(0x51ab5eed);
    auto random_poly = [&](long degree) {
        FpPoly r(static_cast<size_t>(degree) + 1);
        for (auto& c : r) c = rng() % F.p;
        trim(r);
        return r;
    };

    // Equal-degree split within each stage.
    for (auto& [prod, d] : stages) {
        std::vector<FpPoly> work{prod};
        while (!work.empty()) {
            FpPoly g = work.back();
            work.pop_back();
            if (deg(g) == d) {
                result.push_back(monic(F, g));
                continue;
            }
            mpz_class e;
            mpz_ui_pow_ui(e.get_mpz_t(), F.p, static_cast<unsigned long>(d));
            e = (e - 1) / 2;
            for (;;) {
                FpPoly r = random_poly(deg(g) - 1);
                if (deg(r) < 1 && (r.empty() || r[0] == 0)) continue;
                FpPoly acc{1}, base = mod(F, r, g);
                for (long bit = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
                    acc = mod(F, mul(F, acc, acc), g);
                    if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(bit)))
                        acc = mod(F, mul(F, acc, base), g);
                }
                FpPoly h = gcd(F, sub(F, acc, FpPoly{1}), g);
                if (deg(h) > 0 && deg(h) < deg(g)) {
                    work.push_back(h);
                    work.push_back(divmod(F, g, h).first);
                    break;
                }
            }
        }
    }
    return result;
}

} // namespace qclocus
