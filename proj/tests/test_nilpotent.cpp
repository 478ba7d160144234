#include <catch2/catch_amalgamated.hpp>

#include "qclocus/nilpotent.hpp"

using namespace qclocus;

namespace {
/// Brute-force Witt dimension via necklace counting: number of aperiodic
/// words of length n over k letters, divided by n.
Int witt_oracle(long k, long n) {
    // count words of length n whose primitive period is exactly n
    // #aperiodic(n) = sum_{d | n} mu(n/d) k^d  (Moebius inversion of k^n = sum_d d*witt(d))
    Int total = 0;
    for (long d : divisors(n)) {
        Int kd;
        mpz_ui_pow_ui(kd.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(d));
        total += moebius(n / d) * kd;
    }
    return total / n;
}

/// Independent check for small cases: enumerate all words and count the
/// aperiodic ones directly.
long aperiodic_words(long k, long n) {
    long total = 1;
    for (long i = 0; i < n; ++i) total *= k;
    long count = 0;
    for (long w = 0; w < total; ++w) {
        std::vector<long> letters(n);
        long t = w;
        for (long i = 0; i < n; ++i) {
            letters[i] = t % k;
            t /= k;
        }
        bool aperiodic = true;
        for (long d : divisors(n)) {
            if (d == n) continue;
            bool periodic = true;
            for (long i = 0; i < n && periodic; ++i)
                if (letters[i] != letters[i % d]) periodic = false;
            if (periodic) aperiodic = false;
        }
        if (aperiodic) ++count;
    }
    return count / n;
}
} // namespace

TEST_CASE("Witt dimensions") {
    CHECK(witt_free_dim(2, 3) == 2);
    CHECK(witt_free_dim(3, 2) == 3);
    for (long k : {1L, 2L, 3L, 5L}) CHECK(witt_free_dim(k, 1) == k);
    // against the necklace-counting oracle and direct enumeration
    for (long k = 2; k <= 3; ++k)
        for (long n = 1; n <= 6; ++n) {
            CHECK(witt_free_dim(k, n) == witt_oracle(k, n));
            CHECK(witt_free_dim(k, n) == aperiodic_words(k, n));
        }
    CHECK_THROWS_AS(witt_free_dim(0, 1), ContractError);
}

TEST_CASE("realizability obstruction") {
    CHECK(realizability_obstructed({Int(8), Int(27), Int(0)}));       // right side 224/27 > 0
    CHECK_FALSE(realizability_obstructed({Int(6), Int(14), Int(0)})); // right side exactly 0
    CHECK_FALSE(realizability_obstructed({Int(0), Int(5), Int(0)}));  // right side 0
}

TEST_CASE("surface group dimensions and the genus threshold") {
    auto d4 = surface_group_two_step_dims(4);
    CHECK(d4.d1 == 8);
    CHECK(d4.d2 == 27);
    CHECK(d4.d3 == 0);
    auto d2 = surface_group_two_step_dims(2);
    CHECK(d2.d1 == 4);
    CHECK(d2.d2 == 5);
    auto d3 = surface_group_two_step_dims(3);
    CHECK(d3.d1 == 6);
    CHECK(d3.d2 == 14);
    CHECK_THROWS_AS(surface_group_two_step_dims(1), ContractError);

    for (long g = 2; g <= 50; ++g) {
        bool obstructed = realizability_obstructed(surface_group_two_step_dims(g));
        CHECK(obstructed == (g >= 4));
    }
}

TEST_CASE("Witt generating identity") {
    CHECK(witt_generating_identity_holds(2, 8));
    CHECK(witt_generating_identity_holds(3, 8));
}
