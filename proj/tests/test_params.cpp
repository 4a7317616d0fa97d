#include <doctest.h>

#include "etacong/params.hpp"

using namespace etacong;

TEST_CASE("compute_params on the worked examples") {
    auto P = compute_params(5, 13, 1);
    CHECK(P.Delta == 6);
    CHECK(P.D == 4);
    CHECK(P.beta == 10);
    CHECK(P.delta == 42);
    CHECK(P.t == 4);
    CHECK(P.x == Rat64(3, 4));
    CHECK(P.y == 3);
    CHECK(P.k == 8);
    CHECK(P.s == 11);
    CHECK(P.chi.trivial());

    auto P2 = compute_params(5, 7, 1);
    CHECK(P2.beta == 2);
    CHECK(P2.delta == 12);
    CHECK(P2.t == 2);
    CHECK(P2.y == 1);
    CHECK(P2.k == 4);
    CHECK(P2.x == Rat64(1, 4));

    auto P3 = compute_params(3, 7, 2);
    CHECK(P3.D == 6);
    CHECK(P3.y == 5);
    CHECK(P3.k == 36);
    CHECK(P3.s == 41);
}

TEST_CASE("compute_params input validation") {
    CHECK_THROWS_AS((void)compute_params(5, 5, 1), error);   // ell == p
    CHECK_THROWS_AS((void)compute_params(5, 4, 1), error);   // not prime
    CHECK_THROWS_AS((void)compute_params(5, 3, 1), error);   // ell < 5
    CHECK_THROWS_AS((void)compute_params(4, 7, 1), error);   // p not prime
    CHECK_THROWS_AS((void)compute_params(5, 7, 0), error);   // j < 1
}

TEST_CASE("crosscheck_tables on the worked examples") {
    auto C = crosscheck_tables(5, 13, 1);
    REQUIRE(C.any_matched);
    CHECK(C.all_agree);
    REQUIRE(C.rows.size() == 1);
    CHECK(C.rows[0].row == "odd-3");
    CHECK(C.rows[0].y == 4 * (1 + 13 / 4) - 13);  // = 3
    CHECK(C.rows[0].k == 12 * 2 - 16);            // = 8

    auto C2 = crosscheck_tables(3, 7, 2);
    REQUIRE(C2.any_matched);
    CHECK(C2.all_agree);
    CHECK(C2.rows[0].row == "even-1");
    CHECK(C2.rows[0].y == 5);
    CHECK(C2.rows[0].k == 36);

    // p = 23 sits in both divisibility regimes; matched rows must agree
    for (int j = 1; j <= 2; ++j) {
        auto C23 = crosscheck_tables(23, 5, j);
        CHECK(C23.any_matched);
        CHECK(C23.all_agree);
    }

    // the tabulated exceptional triple routes to the last row
    auto C19 = crosscheck_tables(19, 5, 1);
    REQUIRE(C19.any_matched);
    CHECK(C19.all_agree);
    CHECK(C19.rows[0].row == "odd-4");
    CHECK(C19.params.y == -5);
    CHECK(C19.params.t == 0);
}

TEST_CASE("parameter invariants over the full grid") {
    const std::vector<int> ps = {2,  3,  5,  7,  11, 13, 17, 19,
                                 23, 29, 31, 37, 41, 43, 47};
    const std::vector<u64> ells = {5,  7,  11, 13, 17, 19, 23,
                                   29, 31, 37, 41, 43, 47};
    int checked = 0;
    for (int p : ps)
        for (u64 ell : ells)
            for (int j = 1; j <= 4; ++j) {
                if (ell == static_cast<u64>(p)) continue;
                auto C = crosscheck_tables(p, ell, j);
                const auto& P = C.params;
                const i64 lj = static_cast<i64>(P.modulus);
                // defining congruence and range for beta
                CHECK((24 * P.beta - (p + 1)) % lj == 0);
                CHECK(P.beta >= 0);
                CHECK(P.beta < lj);
                // beta from the closed form equals the scan solution
                i64 scan = -1;
                for (i64 b = 0; b < lj; ++b)
                    if ((24 * b - (p + 1)) % lj == 0) {
                        scan = b;
                        break;
                    }
                CHECK(P.beta == scan);
                CHECK((P.beta + P.delta) % lj == 0);
                CHECK(P.s == P.k + P.y);
                CHECK((P.x * Rat64(P.D)).is_integer());
                CHECK(P.x.is_integer() == ((p + 1) % 24 == 0));
                // table rows, when matched, agree with the definitions
                CHECK(C.any_matched);
                CHECK(C.all_agree);
                ++checked;
            }
    CHECK(checked == 728);
}

TEST_CASE("certification-regime parameters stay in range") {
    for (int p : {2, 3, 5})
        for (u64 ell : {5, 7, 11, 13, 17, 19, 23})
            for (int j = 1; j <= 2; ++j) {
                if (ell == static_cast<u64>(p)) continue;
                auto P = compute_params(p, ell, j);
                CHECK(P.y >= 0);
                CHECK(P.k >= 0);
                CHECK(P.chi.trivial());
                if (p == 5 && j % 2 == 1) CHECK(P.k % 4 == 0);
            }
}

TEST_CASE("char_for parity rule") {
    // trivial for p in {2, 3, 5} at any (ell, j)
    for (int p : {2, 3, 5})
        for (u64 ell : {5, 7, 11, 13})
            for (int j = 1; j <= 3; ++j) {
                if (ell == static_cast<u64>(p)) continue;
                CHECK(char_for(p, ell, j).trivial());
            }
    CHECK(char_for(5, 13, 1).trivial());

    // p in {7, 23}, j even: nontrivial
    CHECK(char_for(7, 5, 2) == CharSpec{-7});
    CHECK(char_for(23, 5, 2) == CharSpec{-23});
    CHECK(char_for(23, 5, 1).trivial());

    // p = 7, j odd: nontrivial exactly when the weight is odd, which
    // happens for ell = 1 (mod 6); the parity of k and of D t always
    // agree, so the character pairs with a nonzero target space
    for (u64 ell : {5, 11, 13, 17, 19})
        for (int j = 1; j <= 3; j += 2) {
            auto P = compute_params(7, ell, j);
            CHECK(char_for(7, ell, j) == P.chi);
            CHECK((P.k % 2 != 0) == !P.chi.trivial());
            if (ell % 6 == 1) CHECK(P.chi == CharSpec{-7});
            else CHECK(P.chi.trivial());
        }

    // outside the p + 1 | 24 regime the helper refuses
    CHECK_THROWS_AS((void)char_for(13, 7, 1), error);
}
