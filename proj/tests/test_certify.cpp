#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "etacong/certify.hpp"

using namespace etacong;

namespace {

// determinant over a prime modulus by Gaussian elimination (test-only)
u64 det_mod_prime(ModMatrix A) {
    const u64 m = A.modulus();
    const std::size_t n = A.size();
    u64 det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && A.at(piv, col) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(A.at(piv, j), A.at(col, j));
            det = m - det;
        }
        det = mulmod(det, A.at(col, col), m);
        u64 inv = invmod(A.at(col, col), m);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (A.at(r, col) == 0) continue;
            u64 factor = mulmod(A.at(r, col), inv, m);
            for (std::size_t j = col; j < n; ++j)
                A.at(r, j) = submod(A.at(r, j),
                                    mulmod(factor, A.at(col, j), m), m);
        }
    }
    return det % m;
}

}  // namespace

TEST_CASE("block companion of a 1x1 zero matrix has order 3") {
    // shift and dilation coefficients both reduce to 1, so
    // A = ((-1, -1), (1, 0)), which has order 3 in GL_2 mod any m > 2
    ModM r5(5);
    ModMatrix M(1, r5);
    auto A = block_companion(M, 2, +1, 11);  // 11 = 1 mod 5
    CHECK(A.at(0, 0) == 4);
    CHECK(A.at(0, 1) == 4);
    CHECK(A.at(1, 0) == 1);
    CHECK(A.at(1, 1) == 0);
    auto ord = matrix_orders(A, 4, 100);
    CHECK(ord.order_pgl == 3);
    CHECK(ord.scalar == 1);
    CHECK(ord.order_gl == 3);
}

TEST_CASE("matrix_orders of the identity") {
    ModM r13(13);
    auto ord = matrix_orders(ModMatrix::identity(4, r13), 12, 10);
    CHECK(ord.order_pgl == 1);
    CHECK(ord.scalar == 1);
    CHECK(ord.order_gl == 1);
}

TEST_CASE("matrix_orders cap is resumable") {
    ModM r5(5);
    ModMatrix M(1, r5);
    auto A = block_companion(M, 2, +1, 11);  // order 3
    try {
        matrix_orders(A, 4, 2);
        FAIL("expected order_cap_error");
    } catch (const order_cap_error& e) {
        CHECK(e.iterations_done == 2);
        ModMatrix resume(A.size(), r5);
        for (std::size_t i = 0; i < A.size(); ++i)
            for (std::size_t j = 0; j < A.size(); ++j)
                resume.at(i, j) = e.last_power[i * A.size() + j];
        auto ord = matrix_orders(A, 4, 100, &resume, e.iterations_done);
        CHECK(ord.order_pgl == 3);
    }
}

TEST_CASE("companion determinant is a power of m") {
    auto P = compute_params(5, 13, 1);
    auto rec = hecke_matrix(P, 7);
    auto A = companion_of(rec);
    // det ((B, -bI), (I, 0)) = b^d with b = m^(2s-2)
    u64 expect = powmod(7, (2 * static_cast<u64>(P.s) - 2) * rec.dim, 13);
    CHECK(det_mod_prime(A) == expect);
    CHECK(std::gcd(det_mod_prime(A), u64(13)) == 1);
}

TEST_CASE("hecke_matrix input validation") {
    auto P = compute_params(5, 13, 1);
    CHECK_THROWS_AS((void)hecke_matrix(P, 13), error);  // m = ell
    CHECK_THROWS_AS((void)hecke_matrix(P, 5), error);   // m = p
    CHECK_THROWS_AS((void)hecke_matrix(P, 9), error);   // composite
    CHECK_THROWS_AS((void)hecke_matrix(compute_params(23, 5, 1), 7), error);
}

TEST_CASE("matrix power identities behind the congruence families") {
    auto P = compute_params(5, 7, 1);
    auto rec = hecke_matrix(P, 11);
    auto ord = matrix_orders(companion_of(rec), unit_group_order(P),
                             10'000'000);
    ModM ring(P.modulus);
    int psi = kronecker(-P.p, 11);
    u64 m2s2 = powmod(11, 2 * static_cast<u64>(P.s) - 2, P.modulus);
    u64 inv_m2s2 = invmod(m2s2, P.modulus);

    for (u64 v : {u64(1), u64(2)}) {
        auto red = u_power_reduction(rec.row_action(), P.s, psi, 11,
                                     v * ord.order_pgl - 1);
        CHECK(red.Mi.scalar_value() == u64(0));
        auto prev = u_power_reduction(rec.row_action(), P.s, psi, 11,
                                      v * ord.order_pgl - 2);
        u64 cv = powmod(ord.scalar, v, P.modulus);
        u64 expect = ring.neg(mulmod(cv, inv_m2s2, P.modulus));
        CHECK(prev.Mi.scalar_value() == expect);
    }

    auto at_N = u_power_reduction(rec.row_action(), P.s, psi, 11,
                                  ord.order_gl);
    CHECK(at_N.Mi.is_identity());
    CHECK(at_N.Ni.scalar_value() == u64(0));
    CHECK(at_N.Oi.scalar_value() == u64(0));
}

TEST_CASE("certificate serialization and store") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "etacong_store_test";
    fs::remove_all(dir);
    CertificateStore store(dir);

    auto P = compute_params(5, 7, 1);
    CHECK_FALSE(store.load(5, 7, 1, 11).has_value());
    auto cert = certify(P, 11, store, 16, 1'000'000);
    CHECK_FALSE(cert.from_cache);
    CHECK(cert.tool_version == kToolVersion);
    CHECK(fs::exists(store.path_for(5, 7, 1, 11)));

    // serialization round trip preserves every schema field
    auto doc = certificate_json(cert);
    for (const char* key :
         {"p", "ell", "j", "m", "s", "dim", "modulus", "matrix", "scalar_c",
          "order_pgl_J", "order_gl_N", "congruence_vanishing",
          "congruence_periodic", "precision", "tool_version", "created_at"})
        CHECK(doc.contains(key));
    auto back = certificate_from_json(doc);
    CHECK(back.matrix == cert.matrix);
    CHECK(back.order_pgl_J == cert.order_pgl_J);
    CHECK(back.order_gl_N == cert.order_gl_N);
    CHECK(back.scalar_c == cert.scalar_c);

    // statements carry the computed exponents
    CHECK(cert.congruence_vanishing.find(
              "11^(" + std::to_string(2 * cert.order_pgl_J) + "v-1)") !=
          std::string::npos);
    CHECK(cert.congruence_periodic.find(
              "11^(" + std::to_string(2 * cert.order_gl_N) + "+w)") !=
          std::string::npos);
    CHECK(cert.congruence_vanishing.find("p_[1,5]") != std::string::npos);
    CHECK(cert.congruence_vanishing.find("/4") != std::string::npos);

    // rerun loads from the store and leaves the file untouched
    std::ifstream f1(store.path_for(5, 7, 1, 11));
    std::string bytes1((std::istreambuf_iterator<char>(f1)),
                       std::istreambuf_iterator<char>());
    auto again = certify(P, 11, store, 16, 1'000'000);
    CHECK(again.from_cache);
    CHECK(again.order_pgl_J == cert.order_pgl_J);
    std::ifstream f2(store.path_for(5, 7, 1, 11));
    std::string bytes2((std::istreambuf_iterator<char>(f2)),
                       std::istreambuf_iterator<char>());
    CHECK(bytes1 == bytes2);

    fs::remove_all(dir);
}
