#pragma once

#include "etacong/matrix.hpp"
#include "etacong/qseries.hpp"

// Hecke operators T_n on q-expansions with character, the block
// companion matrix encoding U_{m^2} on an invariant subspace, and the
// matrix recurrence that expresses U_{m^2}^i in terms of it.

namespace etacong {

struct HeckeContext {
    i64 weight = 0;  // s
    i64 level = 0;   // N
    CharSpec character;
};

// T_n = sum_{d | n} psi(d) d^(s-1) V_d U_{n/d}, truncated to
// floor(prec / n) coefficients.  Indices sharing a factor with the
// level are out of scope and rejected.
template <class R>
Series<R> hecke_t(const Series<R>& f, i64 n, const HeckeContext& ctx) {
    if (n < 1) throw error("hecke_t: index must be >= 1");
    if (ctx.weight < 1) throw error("hecke_t: weight must be >= 1");
    if (std::gcd(n, ctx.level) != 1)
        throw error("hecke_t: index " + std::to_string(n) +
                    " shares a factor with level " +
                    std::to_string(ctx.level));
    std::size_t out_len = f.prec() / static_cast<std::size_t>(n);
    if (out_len == 0)
        throw precision_error("hecke_t: need at least n coefficients");
    const R& ring = f.ring();

    std::vector<i64> divs;
    for (i64 d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            divs.push_back(d);
            if (d != n / d) divs.push_back(n / d);
        }
    std::sort(divs.begin(), divs.end());

    Series<R> acc = Series<R>::zero(ring, 0, out_len);
    for (i64 d : divs) {
        int chi = ctx.character.eval(d);
        if (chi == 0) continue;
        auto term = truncate(apply_v(apply_u(f, n / d), d), out_len);
        auto scale = ring.pow(ring.from_int(d),
                              static_cast<u64>(ctx.weight - 1));
        if (chi < 0) scale = ring.neg(scale);
        acc = series_add(acc, series_scale(term, scale));
    }
    return acc;
}

// ---------------------------------------------------------------------------
// With M the matrix of T_{m^2} on a d-dimensional invariant space of
// weight s and character (-p | .), the action of U_{m^2} is encoded by
//
//   A = ( M - psi(m) m^(s-1) I   -m^(2s-2) I )
//       (          I                  0      )
//
// and U_{m^2}^i on the basis vector satisfies
//   f | U_{m^2}^i = M_i f + N_i (f x 1_m) + O_i (f | V_{m^2}),
// where (M_i; M_{i-1}) = A^i (I; 0), N_i = psi(m) m^(s-1) M_{i-1},
// O_i = -m^(2s-2) M_{i-1}.

inline ModMatrix scale_matrix(const ModMatrix& A, u64 c) {
    ModMatrix B(A.size(), A.ring());
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A.size(); ++j)
            B.at(i, j) = A.ring().mul(A.at(i, j), c);
    return B;
}

inline ModMatrix block_companion(const ModMatrix& M, i64 s, int psi_m,
                                 u64 m) {
    const std::size_t d = M.size();
    const ModM& ring = M.ring();
    const u64 mod = ring.modulus();
    u64 ms1 = powmod(m % mod, static_cast<u64>(s - 1), mod);
    u64 shift = psi_m < 0 ? ring.neg(ms1) : ms1;   // psi(m) m^(s-1)
    u64 m2s2 = mulmod(ms1, ms1, mod);              // m^(2s-2)
    ModMatrix A(2 * d, ring);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) A.at(i, j) = M.at(i, j);
        A.at(i, i) = ring.sub(A.at(i, i), shift);
        A.at(i, d + i) = ring.neg(m2s2);
        A.at(d + i, i) = ring.one();
    }
    return A;
}

struct UPowerReduction {
    ModMatrix Mi, Ni, Oi;
};

inline UPowerReduction u_power_reduction(const ModMatrix& M, i64 s,
                                         int psi_m, u64 m, u64 i) {
    const std::size_t d = M.size();
    const ModM& ring = M.ring();
    if (i == 0)
        return {ModMatrix::identity(d, ring), ModMatrix(d, ring),
                ModMatrix(d, ring)};
    ModMatrix Ai = block_companion(M, s, psi_m, m).pow(i);
    ModMatrix Mi(d, ring), Mprev(d, ring);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) {
            Mi.at(r, c) = Ai.at(r, c);
            Mprev.at(r, c) = Ai.at(d + r, c);
        }
    const u64 mod = ring.modulus();
    u64 ms1 = powmod(m % mod, static_cast<u64>(s - 1), mod);
    u64 ns = psi_m < 0 ? ring.neg(ms1) : ms1;
    UPowerReduction out{std::move(Mi), scale_matrix(Mprev, ns),
                        scale_matrix(Mprev, ring.neg(mulmod(ms1, ms1, mod)))};
    return out;
}

// sum_j A[row][j] * v[j], truncated to prec.  All series offset 0.
inline Series<ModM> row_combination(const ModMatrix& A, std::size_t row,
                                    const std::vector<Series<ModM>>& v,
                                    std::size_t prec) {
    Series<ModM> acc = Series<ModM>::zero(v.at(0).ring(), 0, prec);
    for (std::size_t j = 0; j < v.size(); ++j) {
        u64 c = A.at(row, j);
        if (c == 0) continue;
        acc = series_add(acc, series_scale(truncate(v[j], prec),
                                           c));
    }
    return acc;
}

struct UPowerCheck {
    bool ok = true;
    std::size_t element = 0;  // first mismatching basis element
    i64 exponent = -1;        // and exponent, when !ok
};

// Verifies f | U_{m^2}^i = M_i f + N_i (f x 1_m) + O_i (f | V_{m^2})
// coefficientwise through `prec` for every component of fvec.  The
// components must carry m^(2i) * prec coefficients.
inline UPowerCheck check_u_power_identity(
    const std::vector<Series<ModM>>& fvec, const ModMatrix& M, i64 s,
    int psi_m, u64 m, u64 i, std::size_t prec) {
    if (fvec.size() != M.size())
        throw error("check_u_power_identity: dimension mismatch");
    u64 m2i = 1;
    for (u64 t = 0; t < 2 * i; ++t) {
        if (m2i > ((u64(1) << 62) / m))
            throw error("check_u_power_identity: m^(2i) overflow");
        m2i *= m;
    }
    for (const auto& f : fvec)
        if (f.prec() < m2i * prec)
            throw precision_error(
                "check_u_power_identity: components need m^(2i) * prec "
                "coefficients");

    auto red = u_power_reduction(M, s, psi_m, m, i);
    const u64 m2 = m * m;
    std::vector<Series<ModM>> twisted, dilated;
    for (const auto& f : fvec) {
        twisted.push_back(twist_trivial(truncate(f, prec), static_cast<i64>(m)));
        std::size_t base = (prec + m2 - 1) / m2;
        dilated.push_back(
            truncate(apply_v(truncate(f, base), static_cast<i64>(m2)), prec));
    }
    for (std::size_t e = 0; e < fvec.size(); ++e) {
        auto lhs = truncate(apply_u(fvec[e], static_cast<i64>(m2i)), prec);
        auto rhs = series_add(
            row_combination(red.Mi, e, fvec, prec),
            series_add(row_combination(red.Ni, e, twisted, prec),
                       row_combination(red.Oi, e, dilated, prec)));
        for (std::size_t t = 0; t < prec; ++t)
            if (lhs[t] != rhs[t])
                return {false, e, static_cast<i64>(t)};
    }
    return {};
}

}  // namespace etacong
