#include <doctest.h>

#include "etacong/verify.hpp"

using namespace etacong;

TEST_CASE("progression form reproduces the tabulated bases") {
    auto pf7 = fit_progression_form(5, 7, 1, 0);
    CHECK(pf7.coeffs == std::vector<u64>{2, 1, 5});

    auto pf11 = fit_progression_form(5, 11, 1, 0);
    CHECK(pf11.coeffs == std::vector<u64>{3, 7, 3, 6, 4});

    auto pf13 = fit_progression_form(5, 13, 1, 0);
    CHECK(pf13.coeffs == std::vector<u64>{12, 2, 6, 3, 1});
}

TEST_CASE("congruence identity holds with a spot value") {
    auto check = verify_congruence_identity(5, 7, 1, 2000);
    CHECK(check.ok);
    CHECK(check.first_mismatch == -1);
    CHECK(check.terms == 2000);
    // spot: coefficient 1 of the left side is p_[1,5](2) = 2
    ModM r7(7);
    auto lhs = extract_progression(pfn_series(5, 10, r7), 7, 1, 4, 2);
    CHECK(lhs.coeff(1) == 2);

    CHECK(verify_congruence_identity(2, 5, 1, 2000).ok);
}

TEST_CASE("corrupted form is caught within the Sturm window") {
    auto P = compute_params(5, 13, 1);
    auto pf = fit_progression_form(5, 13, 1, 0);
    ModM ring(P.modulus);
    auto bad_coeffs = pf.coeffs;
    bad_coeffs[0] = ring.add(bad_coeffs[0], 1);

    const std::size_t n_terms = 600;
    auto H = linear_combination(bad_coeffs, pf.basis.elements, pf.basis.prec);
    auto g = etaquot_series(
        EtaQuotient(P.D * P.p, {{P.D, P.y}, {P.D * P.p, P.y}}), n_terms,
        ring);
    auto rhs = series_mul(g, apply_v(H, P.D));
    auto lhs = extract_progression(
        pfn_series(5, static_cast<std::size_t>(
                          (P.modulus * (n_terms - 1) + 1) / 4 + 1), ring),
        13, 1, 4, n_terms);
    i64 mismatch = -1;
    for (std::size_t n = 0; n < n_terms && mismatch < 0; ++n)
        if (lhs.coeff(static_cast<i64>(n)) != rhs.coeff(static_cast<i64>(n)))
            mismatch = static_cast<i64>(n);
    REQUIRE(mismatch >= 0);
    // the first divergence cannot escape the dilated Sturm window
    i64 bound = static_cast<i64>(sturm_precision(P.k, P.p)) * P.D +
                P.y * (P.p + 1) * P.D / 24;
    CHECK(mismatch <= bound);
}

TEST_CASE("reference suite passes with published parameters (light part)") {
    ReferenceOptions opt;
    opt.run_mod49 = false;  // the mod-49 example runs in the acceptance suite
    auto report = run_reference_suite(opt);
    REQUIRE(report.checks.size() == 8);
    for (const auto& c : report.checks) {
        INFO(c.name, ": ", c.detail);
        CHECK(c.status == CheckStatus::pass);
    }
    CHECK(report.all_pass());

    auto doc = report_json(report);
    CHECK(doc.contains("table1_ell7"));
    CHECK(doc.contains("hecke_matrix_mod13"));
    CHECK(doc["pass"].get<bool>());
    auto table = report_table(report);
    CHECK(table.find("PASS") != std::string::npos);
}

TEST_CASE("swapping the Hecke prime skips the published comparisons") {
    ReferenceOptions opt;
    opt.m_ex1 = 11;
    opt.run_mod49 = false;
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "etacong_refsuite_test";
    fs::remove_all(dir);
    CertificateStore store(dir);
    opt.store = &store;

    auto report = run_reference_suite(opt);
    bool saw_skip = false;
    for (const auto& c : report.checks) {
        if (c.name == "hecke_matrix_mod13" || c.name == "orders_mod13") {
            CHECK(c.status == CheckStatus::skip);
            saw_skip = true;
        } else {
            CHECK(c.status == CheckStatus::pass);
        }
    }
    CHECK(saw_skip);
    CHECK(report.all_pass());  // skips are not failures
    // the run still certified the swapped instance
    CHECK(store.load(5, 13, 1, 11).has_value());
    fs::remove_all(dir);
}
