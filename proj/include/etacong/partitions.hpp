#pragma once

#include "etacong/etaquot.hpp"

// The two-color partition function p_[1,p](n): one color unrestricted,
// the other restricted to parts divisible by p.  Series computation from
// the Euler product, an independent combinatorial oracle, and extraction
// of arithmetic-progression subseries.

namespace etacong {

template <class R>
struct PartitionSeries {
    int p = 2;
    std::size_t prec = 0;
    Series<R> series;  // offset 0, coefficient n = p_[1,p](n)
};

// 1 / (prod (1 - q^n) prod (1 - q^(pn))) via two sparse divisions.
template <class R>
PartitionSeries<R> pfn_series(int p, std::size_t prec, const R& ring) {
    if (prec < 1) throw precision_error("pfn_series: prec must be >= 1");
    if (!is_prime(static_cast<u64>(p))) throw error("pfn_series: p must be prime");
    auto s = series_div(Series<R>::one(ring, prec),
                        detail::euler_factor(ring, prec));
    s = series_div(s, detail::euler_factor(ring, prec, p));
    return PartitionSeries<R>{p, prec, std::move(s)};
}

// Independent oracle: bounded-knapsack count over the allowed
// (part, color) pairs.  Exact big-integer values; deliberately a
// different algorithm from the power-series inversion above.
inline boost::multiprecision::cpp_int pfn_oracle(int p, i64 n) {
    if (n < 0) throw error("pfn_oracle: n must be >= 0");
    if (!is_prime(static_cast<u64>(p))) throw error("pfn_oracle: p must be prime");
    using Z = boost::multiprecision::cpp_int;
    std::vector<Z> ways(static_cast<std::size_t>(n) + 1, Z(0));
    ways[0] = 1;
    for (i64 part = 1; part <= n; ++part)
        for (i64 t = part; t <= n; ++t)
            ways[static_cast<std::size_t>(t)] +=
                ways[static_cast<std::size_t>(t - part)];
    for (i64 part = p; part <= n; part += p)
        for (i64 t = part; t <= n; ++t)
            ways[static_cast<std::size_t>(t)] +=
                ways[static_cast<std::size_t>(t - part)];
    return ways[static_cast<std::size_t>(n)];
}

// ell^j as u64 with an overflow guard.
inline u64 prime_power(u64 ell, int j) {
    u64 r = 1;
    for (int i = 0; i < j; ++i) {
        if (r > ((u64(1) << 63) - 1) / ell)
            throw error("prime_power: ell^j exceeds 2^63 - 1");
        r *= ell;
    }
    return r;
}

// Coefficient n of the result is p_[1,p]((ell^j n + 1)/D) when
// D | ell^j n + 1, and 0 otherwise (the series is genuinely supported
// only on one residue class mod D).
template <class R>
Series<R> extract_progression(const PartitionSeries<R>& S, u64 ell, int j,
                              i64 D, std::size_t out_len) {
    u64 lj = prime_power(ell, j);
    if (out_len == 0) throw precision_error("extract_progression: empty output");
    u64 max_arg = (lj * (out_len - 1) + 1) / static_cast<u64>(D);
    if (S.prec <= max_arg)
        throw precision_error(
            "extract_progression: input precision " + std::to_string(S.prec) +
            " does not cover argument " + std::to_string(max_arg));
    const R& ring = S.series.ring();
    std::vector<typename R::Value> c(out_len, ring.zero());
    for (std::size_t n = 0; n < out_len; ++n) {
        u64 num = lj * n + 1;
        if (num % static_cast<u64>(D) == 0)
            c[n] = S.series[static_cast<std::size_t>(num / D)];
    }
    return Series<R>(ring, 0, std::move(c));
}

// Unrescaled form: coefficient r is p_[1,p](ell^j r + beta).
template <class R>
Series<R> extract_progression_unrescaled(const PartitionSeries<R>& S, u64 ell,
                                         int j, u64 beta,
                                         std::size_t out_len) {
    u64 lj = prime_power(ell, j);
    if (out_len == 0)
        throw precision_error("extract_progression_unrescaled: empty output");
    u64 max_arg = lj * (out_len - 1) + beta;
    if (S.prec <= max_arg)
        throw precision_error(
            "extract_progression_unrescaled: input precision does not cover "
            "argument " + std::to_string(max_arg));
    const R& ring = S.series.ring();
    std::vector<typename R::Value> c(out_len, ring.zero());
    for (std::size_t r = 0; r < out_len; ++r)
        c[r] = S.series[static_cast<std::size_t>(lj * r + beta)];
    return Series<R>(ring, 0, std::move(c));
}

}  // namespace etacong
