#pragma once

#include <optional>
#include <string>
#include <vector>

#include "etacong/common.hpp"
#include "etacong/partitions.hpp"

// Parameter calculus for the congruence pipeline: from (p, ell, j) derive
// the progression residue beta, the auxiliary quantities delta and t, the
// eta-power y, the weight k, and the character chi, with cross-checks
// against the closed-form tables for each (parity, divisibility) regime.

namespace etacong {

struct CongruenceParams {
    int p = 0;
    u64 ell = 0;
    int j = 0;
    u64 modulus = 0;  // ell^j

    i64 Delta = 0;    // gcd(24, p + 1)
    i64 D = 0;        // 24 / Delta
    i64 alpha = 0;
    i64 beta = 0;     // 24 beta = p + 1 (mod ell^j), 0 <= beta < ell^j
    i64 delta = 0;    // (ell^(2j) - 1)(p + 1) / 24
    i64 t = 0;        // largest t with t (p+1)/Delta <= (beta+delta)/ell^j
    Rat64 x;
    i64 y = 0;        // D t - ell^j
    i64 lambda = 0;   // ell^j - 1 + ell^(j-1)(ell - 1)
    i64 k = 0;        // lambda - D t
    i64 s = 0;        // k + y
    CharSpec chi;     // trivial or (-p | .), by parity of D t
};

inline CongruenceParams compute_params(int p, u64 ell, int j) {
    if (!is_prime(static_cast<u64>(p)))
        throw error("compute_params: p must be prime");
    if (ell < 5 || !is_prime(ell))
        throw error("compute_params: ell must be a prime >= 5");
    if (ell == static_cast<u64>(p))
        throw error("compute_params: ell must differ from p");
    if (j < 1) throw error("compute_params: j must be >= 1");

    CongruenceParams P;
    P.p = p;
    P.ell = ell;
    P.j = j;
    P.modulus = prime_power(ell, j);

    const i64 lj = static_cast<i64>(P.modulus);
    const i64 pp1 = p + 1;
    P.Delta = std::gcd(static_cast<i64>(24), pp1);
    P.D = 24 / P.Delta;

    // alpha and delta involve ell^(j+1) and ell^(2j); guard the width.
    i128 lj1 = static_cast<i128>(lj) * static_cast<i128>(ell);
    i128 l2j = static_cast<i128>(lj) * lj;
    i128 alpha_w = ((j % 2 == 0 ? static_cast<i128>(lj) : lj1) - 1) * pp1 / 24;
    i128 delta_w = (l2j - 1) * pp1 / 24;
    if (alpha_w > INT64_MAX || delta_w > INT64_MAX)
        throw error("compute_params: parameters exceed 64-bit range");
    P.alpha = static_cast<i64>(alpha_w);
    P.delta = static_cast<i64>(delta_w);

    P.beta = lj * (1 + (P.alpha - 1) / lj) - P.alpha;
    if ((24 * static_cast<i128>(P.beta) - pp1) % lj != 0 || P.beta < 0 ||
        P.beta >= lj)
        throw error("compute_params: beta consistency failure");

    if ((P.beta + P.delta) % lj != 0)
        throw error("compute_params: beta + delta not divisible by ell^j");
    i64 q = (P.beta + P.delta) / lj;
    i64 u = pp1 / P.Delta;
    P.t = q / u;

    P.x = Rat64(q) - Rat64(lj * pp1, 24);
    P.y = P.D * P.t - lj;
    P.lambda = lj - 1 + (lj / static_cast<i64>(ell)) *
                            (static_cast<i64>(ell) - 1);
    P.k = P.lambda - P.D * P.t;
    P.s = P.k + P.y;
    P.chi = ((P.D * P.t) % 2 == 0) ? CharSpec{0} : CharSpec{-p};
    return P;
}

// Character in the p + 1 | 24 regime.  Derived from the parity of D t,
// which is the exponent of (-p | .) attached to the eta prefactor; this
// matches the evenness of k (the weight and the character parity must
// agree for the target space to be nonzero).
inline CharSpec char_for(int p, u64 ell, int j) {
    if (24 % (p + 1) != 0)
        throw error("char_for: requires p + 1 | 24");
    return compute_params(p, ell, j).chi;
}

// ---------------------------------------------------------------------------
// Closed-form table rows for x, y, k, keyed by the parity of j and the
// divisibility relation between p + 1 and 24.  crosscheck_tables
// evaluates every row whose conditions hold and compares with the
// definition-derived values.

struct TableRowCheck {
    std::string row;   // identifying label
    Rat64 x;
    i64 y = 0;
    i64 k = 0;
    bool agrees = false;
};

struct TableCheck {
    CongruenceParams params;
    std::vector<TableRowCheck> rows;  // rows whose conditions matched
    bool any_matched = false;
    bool all_agree = false;
};

inline TableCheck crosscheck_tables(int p, u64 ell, int j) {
    TableCheck out;
    out.params = compute_params(p, ell, j);
    const CongruenceParams& P = out.params;
    const i64 l = static_cast<i64>(ell);
    const i64 lj = static_cast<i64>(P.modulus);
    const i64 lj_prev = lj / l;  // ell^(j-1)
    const i64 pp1 = p + 1;
    const i64 u = pp1 / P.Delta;
    const bool div24_p1 = (pp1 % 24 == 0);   // 24 | p + 1
    const bool p1_div24 = (24 % pp1 == 0);   // p + 1 | 24
    const bool p_mid = (p == 13 || p == 17 || p == 19);
    const bool exceptional = (p == 19 && ell == 5 && j == 1);

    auto add_row = [&](std::string label, Rat64 x, i64 y, i64 k) {
        TableRowCheck r;
        r.row = std::move(label);
        r.x = x;
        r.y = y;
        r.k = k;
        r.agrees = (x == P.x && y == P.y && k == P.k);
        out.rows.push_back(std::move(r));
    };

    if (j % 2 == 1) {
        if (div24_p1 && u < lj)
            add_row("odd-1", Rat64(0), 0, lj_prev * (l - 1) - 1);
        if (div24_p1 && u >= lj)
            add_row("odd-2", Rat64(-(u / lj)), -1, lj_prev * (l - 1));
        // The p + 1 | 24 clause needs D >= 2 (for p = 23 the first row
        // already applies and this row's formulas break down at D = 1).
        if ((p1_div24 && P.D >= 2) ||
            (p_mid && l % P.D == P.D - 1 && !exceptional)) {
            i64 fl = l / P.D;
            add_row("odd-3",
                    Rat64(u) * (Rat64(1 + fl) - Rat64(l, P.D)),
                    P.D * (1 + fl) - l,
                    (l - 1) * (lj_prev + 1) - P.D * (1 + fl));
        }
        if ((p_mid && l % P.D != P.D - 1) || exceptional ||
            (p >= 29 && !div24_p1)) {
            i64 fl = l / P.D;
            Rat64 inner = Rat64(u) * (Rat64(l, P.D) - Rat64(fl) -
                                      Rat64(1, P.D * lj)) -
                          Rat64(1, lj);
            add_row("odd-4",
                    Rat64(u) * (Rat64(fl) - Rat64(l, P.D)) +
                        Rat64(1 + inner.floor()),
                    P.D * fl - l,
                    (l - 1) * (lj_prev + 1) - P.D * fl);
        }
    } else {
        if ((div24_p1 && u < lj) || p1_div24)
            add_row("even-1", Rat64(P.D - 1, P.D), P.D - 1,
                    lj_prev * (l - 1) - P.D);
        if (div24_p1 && u >= lj)
            add_row("even-2", Rat64(-(u / lj)), -1, lj_prev * (l - 1));
        if (p_mid || (p >= 29 && !div24_p1)) {
            Rat64 q24(pp1, 24);
            Rat64 inner = q24 - (q24 + Rat64(1)) / Rat64(lj);
            add_row("even-3", Rat64(1 + inner.floor()) - q24, -1,
                    lj_prev * (l - 1));
        }
    }

    out.any_matched = !out.rows.empty();
    out.all_agree = out.any_matched;
    for (const auto& r : out.rows) out.all_agree = out.all_agree && r.agrees;
    return out;
}

}  // namespace etacong
