#pragma once

#include <map>
#include <string>
#include <vector>

#include "etacong/qseries.hpp"

// Eta quotients prod_{delta | N} eta(delta z)^(r_delta): expansions via
// pentagonal sparsity, the weight/character criterion, cusp orders, and
// the catalog of generator forms used to span M_k(Gamma_0(p)) for
// p in {2, 3, 5}.

namespace etacong {

struct EtaQuotient {
    i64 level = 1;
    std::map<i64, i64> exponents;  // divisor delta -> r_delta

    EtaQuotient() = default;
    EtaQuotient(i64 N, std::map<i64, i64> exps)
        : level(N), exponents(std::move(exps)) {
        for (const auto& [d, r] : exponents) {
            (void)r;
            if (d < 1 || level % d != 0)
                throw error("EtaQuotient: " + std::to_string(d) +
                            " does not divide level " + std::to_string(level));
        }
    }

    // Sum of exponents = 2k; integer weight requires this to be even.
    i64 exponent_sum() const {
        i64 s = 0;
        for (const auto& [d, r] : exponents) {
            (void)d;
            s += r;
        }
        return s;
    }

    // Exponent offset of the expansion, in units of 1/24.
    i64 offset24() const {
        i64 s = 0;
        for (const auto& [d, r] : exponents) s += d * r;
        return s;
    }

    // Dilate z -> c z: divisors scale by c, the level by the same factor.
    EtaQuotient dilated(i64 c) const {
        std::map<i64, i64> e;
        for (const auto& [d, r] : exponents) e[d * c] = r;
        return EtaQuotient(level * c, std::move(e));
    }
};

namespace detail {

// prod (1 - q^(dn)), offset 0: coefficients +-1 supported on the
// generalized pentagonal numbers k(3k +- 1)/2 scaled by d.
template <class R>
Series<R> euler_factor(const R& ring, std::size_t prec, i64 dilation = 1) {
    std::vector<typename R::Value> c(prec, ring.zero());
    if (prec > 0) c[0] = ring.one();
    for (i64 k = 1;; ++k) {
        bool any = false;
        i64 sgn = (k % 2 == 1) ? -1 : 1;
        for (i64 g : {k * (3 * k - 1) / 2, k * (3 * k + 1) / 2}) {
            i64 e = g * dilation;
            if (e < static_cast<i64>(prec)) {
                c[static_cast<std::size_t>(e)] = ring.from_int(sgn);
                any = true;
            }
        }
        if (!any) break;
    }
    return Series<R>(ring, 0, std::move(c));
}

// prod (1 - q^(dn))^3 = sum_k (-1)^k (2k+1) q^(d k(k+1)/2), offset 0.
// One cube step replaces three pentagonal steps in the power ladders.
template <class R>
Series<R> euler_factor_cubed(const R& ring, std::size_t prec,
                             i64 dilation = 1) {
    std::vector<typename R::Value> c(prec, ring.zero());
    for (i64 k = 0;; ++k) {
        i64 e = (k * (k + 1) / 2) * dilation;
        if (e >= static_cast<i64>(prec)) break;
        i64 v = (k % 2 == 1) ? -(2 * k + 1) : (2 * k + 1);
        c[static_cast<std::size_t>(e)] = ring.from_int(v);
    }
    return Series<R>(ring, 0, std::move(c));
}

}  // namespace detail

// eta(z) = q^(1/24) prod (1 - q^n).
template <class R>
Series<R> eta_series(const R& ring, std::size_t prec) {
    if (prec < 1) throw precision_error("eta_series: prec must be >= 1");
    auto e = detail::euler_factor(ring, prec);
    return Series<R>(ring, 1, e.coeffs());
}

// Expansion of an eta quotient to `prec` coefficients.  Powers are built
// by repeated multiplication/division by the sparse pentagonal factors
// (in cube blocks), so the cost is O(|r| * prec * sqrt(prec / delta))
// per divisor rather than a dense power.
template <class R>
Series<R> etaquot_series(const EtaQuotient& E, std::size_t prec,
                         const R& ring) {
    if (prec < 1) throw precision_error("etaquot_series: prec must be >= 1");
    Series<R> acc = Series<R>::one(ring, prec);
    for (const auto& [delta, r] : E.exponents) {
        if (r == 0) continue;
        i64 n = r > 0 ? r : -r;
        i64 cubes = n / 3, singles = n % 3;
        if (cubes > 0) {
            auto f3 = detail::euler_factor_cubed(ring, prec, delta);
            for (i64 i = 0; i < cubes; ++i)
                acc = r > 0 ? series_mul(acc, f3) : series_div(acc, f3);
        }
        if (singles > 0) {
            auto f1 = detail::euler_factor(ring, prec, delta);
            for (i64 i = 0; i < singles; ++i)
                acc = r > 0 ? series_mul(acc, f1) : series_div(acc, f1);
        }
    }
    return Series<R>(ring, E.offset24(), acc.coeffs());
}

// ---------------------------------------------------------------------------
// Modularity criterion: for integer weight k = (1/2) sum r_delta and both
// 24-divisibility conditions, the quotient transforms on Gamma_0(N) with
// character ((-1)^k s | .), s = prod delta^(r_delta).

struct EtaWeightChar {
    i64 weight = 0;       // k
    bool cond_delta_r = false;   // sum delta r_delta = 0 mod 24
    bool cond_level = false;     // N sum r_delta/delta = 0 mod 24
    boost::multiprecision::cpp_int s_num{1};  // s as a reduced fraction
    boost::multiprecision::cpp_int s_den{1};
    CharSpec character;   // squarefree-reduced (-1)^k s
};

inline EtaWeightChar weight_and_character(const EtaQuotient& E) {
    if (E.exponent_sum() % 2 != 0)
        throw error("weight_and_character: odd exponent sum gives "
                    "half-integral weight, which is unsupported");
    EtaWeightChar out;
    out.weight = E.exponent_sum() / 2;
    out.cond_delta_r = ((E.offset24() % 24) + 24) % 24 == 0;
    i64 lvl_sum = 0;
    for (const auto& [d, r] : E.exponents) lvl_sum += (E.level / d) * r;
    out.cond_level = ((lvl_sum % 24) + 24) % 24 == 0;

    std::map<u64, i64> parity;  // prime -> exponent of s
    for (const auto& [d, r] : E.exponents) {
        if (r > 0)
            out.s_num *= boost::multiprecision::pow(
                boost::multiprecision::cpp_int(d), static_cast<unsigned>(r));
        else if (r < 0)
            out.s_den *= boost::multiprecision::pow(
                boost::multiprecision::cpp_int(d), static_cast<unsigned>(-r));
        for (u64 q : prime_factors(static_cast<u64>(d))) {
            i64 v = 0;
            u64 dd = static_cast<u64>(d);
            while (dd % q == 0) dd /= q, ++v;
            parity[q] += v * r;
        }
    }
    i64 disc = (out.weight % 2 == 0) ? 1 : -1;
    for (const auto& [q, v] : parity)
        if (((v % 2) + 2) % 2 == 1) disc *= static_cast<i64>(q);
    out.character = CharSpec{disc == 1 ? 0 : disc};
    return out;
}

// Order of vanishing at the cusp c/d of Gamma_0(N) (only d matters):
// raw value (1/24) sum gcd(d, delta)^2 r_delta / delta; the normalized
// value multiplies by the cusp width N / gcd(d^2, N), giving the order in
// the local variable.
inline Rat64 cusp_order(const EtaQuotient& E, i64 d, bool normalized) {
    if (d < 1) throw error("cusp_order: d must be >= 1");
    Rat64 sum(0);
    for (const auto& [delta, r] : E.exponents) {
        i64 g = std::gcd(d, delta);
        sum = sum + Rat64(g * g * r, delta);
    }
    Rat64 raw = sum * Rat64(1, 24);
    if (!normalized) return raw;
    i64 width = E.level / std::gcd(d * d, E.level);
    return raw * Rat64(width);
}

// ---------------------------------------------------------------------------
// Generator catalog for M_k(Gamma_0(p)), p in {2, 3, 5}.  Monomials in
// these forms span every weight the congruence pipeline requests; the
// space construction asserts the achieved rank against the dimension
// formula rather than assuming it.

struct GeneratorForm {
    std::string name;
    int weight = 0;
    enum class Kind { eta_quotient, eisenstein2 } kind = Kind::eta_quotient;
    EtaQuotient eta;  // set for eta_quotient entries
    int p = 0;
};

// E_{2,p}(z) = (p E_2(pz) - E_2(z)) / (p - 1), normalized to constant
// term 1: equals 1 + (24/(p-1)) sum (sigma_1(n) - p sigma_1(n/p)) q^n.
template <class R>
Series<R> eisenstein2_series(int p, std::size_t prec, const R& ring) {
    if (prec < 1)
        throw precision_error("eisenstein2_series: prec must be >= 1");
    std::vector<u64> sigma(prec, 0);  // sigma_1 by sieve
    for (std::size_t d = 1; d < prec; ++d)
        for (std::size_t n = d; n < prec; n += d) sigma[n] += d;
    if (24 % (p - 1) != 0)
        throw error("eisenstein2_series: p - 1 must divide 24");
    i64 cp = 24 / (p - 1);
    std::vector<typename R::Value> c(prec, ring.zero());
    c[0] = ring.one();
    for (std::size_t n = 1; n < prec; ++n) {
        i64 v = static_cast<i64>(sigma[n]);
        if (n % static_cast<std::size_t>(p) == 0)
            v -= p * static_cast<i64>(sigma[n / static_cast<std::size_t>(p)]);
        c[n] = ring.from_int(cp * v);
    }
    return Series<R>(ring, 0, std::move(c));
}

inline std::vector<GeneratorForm> generator_catalog(int p) {
    auto eta_gen = [&](std::string name, int weight, i64 r1, i64 rp) {
        GeneratorForm f;
        f.name = std::move(name);
        f.weight = weight;
        f.kind = GeneratorForm::Kind::eta_quotient;
        f.eta = EtaQuotient(p, {{1, r1}, {p, rp}});
        f.p = p;
        return f;
    };
    auto e2_gen = [&]() {
        GeneratorForm f;
        f.name = "e2";
        f.weight = 2;
        f.kind = GeneratorForm::Kind::eisenstein2;
        f.p = p;
        return f;
    };
    switch (p) {
        case 2:
            return {e2_gen(), eta_gen("g0", 4, 16, -8),
                    eta_gen("g1", 4, -8, 16)};
        case 3:
            return {e2_gen(), eta_gen("g0", 6, 18, -6),
                    eta_gen("g1", 6, 6, 6), eta_gen("g2", 6, -6, 18)};
        case 5:
            return {e2_gen(), eta_gen("g0", 4, 10, -2),
                    eta_gen("g1", 4, 4, 4), eta_gen("g2", 4, -2, 10)};
        default:
            throw error("generator_catalog: unsupported level " +
                        std::to_string(p));
    }
}

template <class R>
Series<R> generator_expansion(const GeneratorForm& g, std::size_t prec,
                              const R& ring) {
    if (g.kind == GeneratorForm::Kind::eta_quotient)
        return etaquot_series(g.eta, prec, ring);
    return eisenstein2_series(g.p, prec, ring);
}

}  // namespace etacong
