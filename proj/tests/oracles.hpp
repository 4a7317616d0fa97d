#pragma once

#include <random>

#include "etacong/qseries.hpp"

// Test-only oracles, kept deliberately independent of the library code
// paths they are used to check: direct enumeration instead of series
// inversion, trial division instead of a sieve, naive polynomial
// multiplication instead of the pentagonal shortcut.

namespace oracles {

using etacong::i64;
using etacong::u64;

// Number of partitions of n by explicit recursive enumeration.
inline i64 partition_count_enum(i64 n, i64 max_part) {
    if (n == 0) return 1;
    i64 total = 0;
    for (i64 part = std::min(n, max_part); part >= 1; --part)
        total += partition_count_enum(n - part, part);
    return total;
}

inline i64 partition_count_enum(i64 n) { return partition_count_enum(n, n); }

// Two-color partitions of n, the second color restricted to parts
// divisible by p: enumerate the second-color sub-partition directly.
inline i64 two_color_count_enum(int p, i64 n) {
    // partitions of m into parts divisible by p = partitions of m/p
    i64 total = 0;
    for (i64 m = 0; m <= n; m += p)
        total += partition_count_enum(n - m) * partition_count_enum(m / p);
    return total;
}

inline i64 sigma1_trial(i64 n) {
    i64 s = 0;
    for (i64 d = 1; d <= n; ++d)
        if (n % d == 0) s += d;
    return s;
}

// Coefficients of prod_{n=1..limit} (1 - q^n) through q^prec by naive
// polynomial multiplication.
inline std::vector<i64> euler_product_naive(std::size_t prec, i64 limit) {
    std::vector<i64> c(prec, 0);
    c[0] = 1;
    for (i64 n = 1; n <= limit; ++n) {
        std::vector<i64> next(c);
        for (std::size_t i = 0; i + static_cast<std::size_t>(n) < prec; ++i)
            next[i + static_cast<std::size_t>(n)] -= c[i];
        c = std::move(next);
    }
    return c;
}

// Deterministic random series for property tests.
inline etacong::Series<etacong::ModM> random_mod_series(std::mt19937_64& rng,
                                                        const etacong::ModM& ring,
                                                        std::size_t prec,
                                                        i64 offset = 0) {
    std::vector<u64> c(prec);
    for (auto& v : c) v = rng() % ring.modulus();
    return etacong::Series<etacong::ModM>(ring, 24 * offset, std::move(c));
}

inline etacong::Series<etacong::ZZ> random_zz_series(std::mt19937_64& rng,
                                                     std::size_t prec,
                                                     i64 offset = 0,
                                                     i64 span = 50) {
    std::vector<etacong::ZZ::Value> c(prec);
    for (auto& v : c)
        v = static_cast<i64>(rng() % static_cast<u64>(2 * span + 1)) - span;
    return etacong::Series<etacong::ZZ>(etacong::ZZ{}, 24 * offset,
                                        std::move(c));
}

}  // namespace oracles
