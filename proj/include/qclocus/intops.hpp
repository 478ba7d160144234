#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "qclocus/rational.hpp"

namespace qclocus {

inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline Int next_prime(const Int& n) {
    Int p;
    mpz_nextprime(p.get_mpz_t(), n.get_mpz_t());
    return p;
}

namespace detail {

inline Int pollard_rho(const Int& n) {
    // Brent's variant; n must be composite and odd.
    for (Int c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Int diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
    }
}

inline void factor_into(Int n, std::map<Int, long>& out) {
    if (n <= 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ++out[Int(p)];
            n /= p;
        }
        if (n == 1) return;
    }
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    Int d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace detail

/// Prime factorisation of |n|, as prime -> exponent.  n must be nonzero.
inline std::map<Int, long> factor_integer(const Int& n) {
    if (n == 0) throw ContractError("factor_integer: zero");
    std::map<Int, long> out;
    Int m = ::abs(n);
    detail::factor_into(m, out);
    return out;
}

/// Primes dividing |num(q)| or den(q).
inline std::vector<Int> rational_prime_support(const Rational& q) {
    std::vector<Int> out;
    if (q.is_zero()) throw ContractError("prime support of zero");
    for (auto& [p, e] : factor_integer(q.num() * q.den())) out.push_back(p);
    return out;
}

inline long euler_phi(long n) {
    long result = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

inline int moebius(long n) {
    int mu = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

inline std::vector<long> divisors(long n) {
    std::vector<long> out;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d != n / d) out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// All m >= 1 with euler_phi(m) <= bound, ascending.
inline std::vector<long> phi_bounded_orders(long bound) {
    // phi(m) >= sqrt(m/2) for all m, so m <= 2*bound^2 + 1.
    std::vector<long> out;
    long limit = 2 * bound * bound + 1;
    for (long m = 1; m <= limit; ++m)
        if (euler_phi(m) <= bound) out.push_back(m);
    return out;
}

/// Largest integer r with r^2 <= n; exact test helper below.
inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        if (root) *root = isqrt(n);
        return true;
    }
    return false;
}

/// Exact square root of a nonnegative rational, if it is a square in Q.
inline bool rational_sqrt(const Rational& q, Rational* root) {
    if (q.sign() < 0) return false;
    Int rn, rd;
    if (!is_perfect_square(q.num(), &rn) || !is_perfect_square(q.den(), &rd)) return false;
    if (root) *root = Rational(rn, rd);
    return true;
}

} // namespace qclocus
