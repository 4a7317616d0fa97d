#pragma once

#include <chrono>
#include <sstream>

#include "etacong/certify.hpp"

// End-to-end verification: fit the progression generating function into
// the weight-k basis, check the congruence identity coefficientwise, and
// reproduce the published reference values (basis forms, Hecke matrices,
// matrix orders) as a named check suite.

namespace etacong {

struct ProgressionForm {
    CongruenceParams params;
    std::vector<u64> coeffs;   // in the echelon basis of M_k(Gamma_0(p))
    std::size_t h_prec = 0;    // coefficients of the weight-k form checked
    SpaceBasis<ModM> basis;
};

// Computes sum_n p_[1,p]((ell^j n + 1)/D) q^n mod ell^j, divides by the
// eta prefactor (eta(Dz) eta(Dpz))^y, and expresses the quotient in the
// echelon basis evaluated at Dz.  A nonzero residual anywhere through
// the working precision is fatal; it would contradict the congruence.
inline ProgressionForm fit_progression_form(int p, u64 ell, int j,
                                            std::size_t h_prec,
                                            std::size_t margin = 16) {
    auto P = compute_params(p, ell, j);
    if (P.p != 2 && P.p != 3 && P.p != 5)
        throw error("fit_progression_form: supported only for p in {2,3,5}");
    ModM ring(P.modulus);
    const std::size_t W =
        std::max(h_prec, sturm_precision(P.k, P.p)) + margin;
    auto basis = echelon_basis(P.p, P.k, W, ring);

    const i64 lead0 = P.y * (P.p + 1) * P.D / 24;
    const std::size_t n_len =
        static_cast<std::size_t>(P.D) * W + static_cast<std::size_t>(lead0) + 1;
    const std::size_t pfn_len = static_cast<std::size_t>(
        (P.modulus * (n_len - 1) + 1) / static_cast<u64>(P.D) + 1);
    auto pfn = pfn_series(P.p, pfn_len, ring);
    auto L = extract_progression(pfn, ell, j, P.D, n_len);
    auto g = etaquot_series(
        EtaQuotient(P.D * P.p, {{P.D, P.y}, {P.D * P.p, P.y}}), n_len, ring);
    auto Q = series_div(L, g);
    auto Q0 = drop_below24(Q, 0);
    for (std::size_t i = 0; i < Q0.prec(); ++i)
        if (i % static_cast<std::size_t>(P.D) != 0 && Q0[i] != 0)
            throw residual_error(
                "fit_progression_form: quotient has support off the "
                "D-lattice at q^" + std::to_string(i));
    auto H = truncate(apply_u(Q0, P.D), W);
    auto [coeffs, residual] =
        forward_substitute(H, basis.elements, basis.lead_exponents);
    if (auto bad = residual.leading_index())
        throw residual_error(
            "fit_progression_form: nonzero residual at q^" +
            std::to_string(*bad) + " (p=" + std::to_string(p) + ", ell=" +
            std::to_string(ell) + ", j=" + std::to_string(j) + ")");
    return ProgressionForm{P, std::move(coeffs), W, std::move(basis)};
}

struct CongruenceCheck {
    bool ok = false;
    i64 first_mismatch = -1;
    std::size_t terms = 0;
};

// Direct coefficientwise check of the congruence
//   sum p_[1,p]((ell^j n + 1)/D) q^n = (eta(Dz) eta(Dpz))^y H(Dz)
// through n_terms coefficients mod ell^j, reconstructing the right side
// by multiplication (an arithmetic path independent of the division used
// in the fit).
inline CongruenceCheck verify_congruence_identity(int p, u64 ell, int j,
                                                  std::size_t n_terms,
                                                  std::size_t margin = 16) {
    auto P = compute_params(p, ell, j);
    const std::size_t h =
        (n_terms + static_cast<std::size_t>(P.D) - 1) /
        static_cast<std::size_t>(P.D);
    auto pf = fit_progression_form(p, ell, j, h, margin);
    ModM ring(P.modulus);

    auto H = linear_combination(pf.coeffs, pf.basis.elements, pf.basis.prec);
    auto g = etaquot_series(
        EtaQuotient(P.D * P.p, {{P.D, P.y}, {P.D * P.p, P.y}}), n_terms,
        ring);
    auto rhs = series_mul(g, apply_v(H, P.D));

    const std::size_t pfn_len = static_cast<std::size_t>(
        (P.modulus * (n_terms - 1) + 1) / static_cast<u64>(P.D) + 1);
    auto lhs = extract_progression(pfn_series(P.p, pfn_len, ring), ell, j,
                                   P.D, n_terms);
    for (std::size_t n = 0; n < n_terms; ++n)
        if (lhs.coeff(static_cast<i64>(n)) !=
            rhs.coeff(static_cast<i64>(n)))
            return {false, static_cast<i64>(n), n_terms};
    return {true, -1, n_terms};
}

// ---------------------------------------------------------------------------
// Published reference values.

namespace reference {

struct Table1Row {
    u64 ell;
    i64 y;
    i64 k;
    // monomial exponent vectors over the level-5 catalog (e2, g0, g1, g2)
    std::vector<std::pair<u64, std::vector<i64>>> form;
};

inline const std::vector<Table1Row>& table1() {
    static const std::vector<Table1Row> rows = {
        {7, 1, 4, {{2, {0, 1, 0, 0}}, {1, {0, 0, 1, 0}}, {5, {0, 0, 0, 1}}}},
        {11,
         1,
         8,
         {{3, {0, 2, 0, 0}},
          {7, {0, 1, 1, 0}},
          {3, {0, 0, 2, 0}},
          {6, {0, 0, 1, 1}},
          {4, {0, 0, 0, 2}}}},
        {13,
         3,
         8,
         {{12, {0, 2, 0, 0}},
          {2, {0, 1, 1, 0}},
          {6, {0, 0, 2, 0}},
          {3, {0, 0, 1, 1}},
          {1, {0, 0, 0, 2}}}},
        {17,
         3,
         12,
         {{10, {0, 3, 0, 0}},
          {16, {0, 2, 1, 0}},
          {7, {0, 2, 0, 1}},
          {13, {0, 1, 1, 1}},
          {8, {0, 1, 0, 2}},
          {15, {0, 0, 1, 2}},
          {1, {0, 0, 0, 3}}}}};
    return rows;
}

inline const std::vector<std::vector<u64>>& hecke_matrix_13() {
    static const std::vector<std::vector<u64>> m = {{10, 3, 6, 3, 11},
                                                    {9, 12, 11, 12, 5},
                                                    {11, 9, 1, 6, 2},
                                                    {12, 1, 10, 12, 6},
                                                    {11, 2, 7, 11, 10}};
    return m;
}

inline const std::vector<std::vector<u64>>& hecke_matrix_49() {
    static const std::vector<std::vector<u64>> m = {
        {1, 3, 0, 10, 11, 44, 18, 10, 28, 45, 16, 26, 34},
        {15, 22, 9, 9, 36, 38, 5, 40, 24, 42, 36, 1, 39},
        {14, 2, 38, 10, 7, 6, 41, 47, 7, 15, 8, 12, 31},
        {36, 15, 31, 20, 4, 33, 34, 41, 0, 40, 3, 14, 40},
        {33, 30, 22, 21, 28, 14, 38, 44, 2, 29, 30, 6, 39},
        {47, 2, 19, 2, 34, 16, 10, 24, 10, 15, 7, 1, 41},
        {3, 4, 15, 2, 37, 7, 3, 7, 16, 44, 43, 46, 31},
        {41, 8, 7, 36, 45, 31, 38, 16, 27, 30, 26, 9, 26},
        {11, 6, 44, 43, 44, 2, 45, 14, 28, 21, 36, 23, 26},
        {19, 14, 3, 26, 0, 20, 6, 12, 25, 20, 3, 29, 8},
        {17, 40, 1, 15, 7, 19, 20, 27, 7, 38, 38, 16, 14},
        {25, 29, 22, 42, 24, 26, 26, 3, 15, 30, 44, 22, 22},
        {20, 33, 23, 3, 28, 10, 46, 23, 46, 45, 0, 31, 1}};
    return m;
}

inline constexpr u64 orders_13_J = 1190;
inline constexpr u64 orders_13_N = 3570;
inline constexpr u64 orders_49_J = 1176;
inline constexpr u64 orders_49_N = 1176;

}  // namespace reference

// ---------------------------------------------------------------------------
// Reference check suite.

enum class CheckStatus { pass, fail, skip };

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::fail;
    std::string detail;
    double seconds = 0.0;
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (c.status == CheckStatus::fail) return false;
        return true;
    }
};

inline const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "PASS";
        case CheckStatus::fail: return "FAIL";
        default: return "SKIP";
    }
}

inline nlohmann::ordered_json report_json(const VerificationReport& r) {
    nlohmann::ordered_json out;
    for (const auto& c : r.checks) {
        nlohmann::ordered_json entry;
        entry["status"] = status_name(c.status);
        entry["detail"] = c.detail;
        entry["seconds"] = c.seconds;
        out[c.name] = entry;
    }
    out["pass"] = r.all_pass();
    return out;
}

inline std::string report_table(const VerificationReport& r) {
    std::ostringstream os;
    for (const auto& c : r.checks) {
        os << status_name(c.status) << "  " << c.name;
        for (std::size_t i = c.name.size(); i < 24; ++i) os << ' ';
        char buf[32];
        std::snprintf(buf, sizeof buf, "%8.2fs", c.seconds);
        os << buf;
        if (!c.detail.empty()) os << "  " << c.detail;
        os << "\n";
    }
    os << (r.all_pass() ? "PASS" : "FAIL") << "  (" << r.checks.size()
       << " checks)\n";
    return os.str();
}

struct ReferenceOptions {
    u64 m_ex1 = 7;   // Hecke index prime for the mod-13 example
    u64 m_ex2 = 23;  // and for the mod-49 example
    std::size_t margin = 16;
    u64 order_cap = 10'000'000;
    const CertificateStore* store = nullptr;
    bool run_mod13 = true;  // test hooks; the CLI always runs everything
    bool run_mod49 = true;
};

// Runs the ten named reference checks: the four tabulated basis forms
// with their (y, k) parameters and the space dimensions, then both
// published Hecke matrices and their matrix orders.  Swapping m away
// from the published value still certifies, but the comparison checks
// report SKIP (there is no reference to compare against).
inline VerificationReport run_reference_suite(
    const ReferenceOptions& opt = {}) {
    VerificationReport report;
    auto timed = [&](const std::string& name, auto&& body) {
        auto t0 = std::chrono::steady_clock::now();
        CheckResult res;
        res.name = name;
        try {
            body(res);
        } catch (const residual_error& e) {
            res.status = CheckStatus::fail;
            res.detail = e.what();
        }
        res.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          t0)
                .count();
        report.checks.push_back(std::move(res));
    };

    // Table 1: the four progression forms for p = 5, j = 1.
    for (const auto& row : reference::table1()) {
        timed("table1_ell" + std::to_string(row.ell), [&](CheckResult& res) {
            auto pf = fit_progression_form(5, row.ell, 1, 0, opt.margin);
            ModM ring(pf.params.modulus);
            // reference form as a q-expansion
            std::vector<u64> ref_coeffs;
            std::vector<Series<ModM>> ref_monos;
            for (const auto& [c, mono] : row.form) {
                ref_coeffs.push_back(ring.from_int(static_cast<i64>(c)));
                ref_monos.push_back(monomial_expansion(
                    pf.basis.catalog, mono, pf.basis.prec, ring));
            }
            auto ref_exp =
                linear_combination(ref_coeffs, ref_monos, pf.basis.prec);
            auto fit_exp = linear_combination(pf.coeffs, pf.basis.elements,
                                              pf.basis.prec);
            bool exp_eq = series_agree(
                ref_exp, fit_exp, 24 * static_cast<i64>(pf.basis.prec));
            bool coeff_eq = true;
            if (row.ell != 17) {
                // listed monomials are exactly the echelon basis here
                std::vector<u64> expect(pf.coeffs.size(), 0);
                for (std::size_t i = 0; i < row.form.size(); ++i)
                    expect[i] = ring.from_int(
                        static_cast<i64>(row.form[i].first));
                coeff_eq = (expect == pf.coeffs);
            }
            res.status = (exp_eq && coeff_eq) ? CheckStatus::pass
                                              : CheckStatus::fail;
            if (res.status == CheckStatus::fail)
                res.detail = exp_eq ? "basis coefficients differ"
                                    : "q-expansions differ";
        });
    }

    timed("table1_params", [&](CheckResult& res) {
        bool ok = true;
        std::string bad;
        for (const auto& row : reference::table1()) {
            auto P = compute_params(5, row.ell, 1);
            if (P.y != row.y || P.k != row.k) {
                ok = false;
                bad += " ell=" + std::to_string(row.ell);
            }
        }
        res.status = ok ? CheckStatus::pass : CheckStatus::fail;
        res.detail = ok ? "" : "y/k mismatch at" + bad;
    });

    timed("dimensions", [&](CheckResult& res) {
        bool ok = dim_mk(5, 8) == 5 && dim_mk(3, 36) == 13;
        res.status = ok ? CheckStatus::pass : CheckStatus::fail;
    });

    // The two published Hecke matrices and their orders.
    auto matrix_checks = [&](const std::string& tag, int p, u64 ell, int j,
                             u64 m, u64 m_published,
                             const std::vector<std::vector<u64>>& ref_matrix,
                             u64 refJ, u64 refN) {
        std::optional<std::pair<std::vector<u64>, std::size_t>> computed;
        std::optional<MatrixOrders> ord;
        timed("hecke_matrix_" + tag, [&](CheckResult& res) {
            auto P = compute_params(p, ell, j);
            if (opt.store) {
                auto cert =
                    certify(P, m, *opt.store, opt.margin, opt.order_cap);
                computed = {cert.matrix, cert.dim};
                ord = MatrixOrders{cert.order_pgl_J, cert.scalar_c,
                                   cert.order_gl_N};
            } else {
                auto rec = hecke_matrix(P, m, opt.margin);
                computed = {rec.matrix.entries(), rec.dim};
                ord = matrix_orders(companion_of(rec), unit_group_order(P),
                                    opt.order_cap);
            }
            if (m != m_published) {
                res.status = CheckStatus::skip;
                res.detail = "no published matrix for m=" + std::to_string(m);
                return;
            }
            const auto& [entries, dim] = *computed;
            bool ok = dim == ref_matrix.size();
            for (std::size_t i = 0; ok && i < dim; ++i)
                for (std::size_t jj = 0; ok && jj < dim; ++jj)
                    ok = entries[i * dim + jj] == ref_matrix[i][jj];
            res.status = ok ? CheckStatus::pass : CheckStatus::fail;
            if (!ok) res.detail = "matrix entries differ";
        });
        timed("orders_" + tag, [&](CheckResult& res) {
            if (!ord) {
                res.status = CheckStatus::fail;
                res.detail = "matrix computation did not complete";
                return;
            }
            if (m != m_published) {
                res.status = CheckStatus::skip;
                res.detail = "no published orders for m=" + std::to_string(m);
                return;
            }
            bool ok = ord->order_pgl == refJ && ord->order_gl == refN;
            res.status = ok ? CheckStatus::pass : CheckStatus::fail;
            res.detail = "J=" + std::to_string(ord->order_pgl) +
                         " N=" + std::to_string(ord->order_gl) +
                         " exponents " + std::to_string(2 * ord->order_pgl) +
                         "v-1 / " + std::to_string(2 * ord->order_gl);
        });
    };

    if (opt.run_mod13)
        matrix_checks("mod13", 5, 13, 1, opt.m_ex1, 7,
                      reference::hecke_matrix_13(), reference::orders_13_J,
                      reference::orders_13_N);
    if (opt.run_mod49)
        matrix_checks("mod49", 3, 7, 2, opt.m_ex2, 23,
                      reference::hecke_matrix_49(), reference::orders_49_J,
                      reference::orders_49_N);
    return report;
}

}  // namespace etacong
