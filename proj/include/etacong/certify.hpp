#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>

#include <json.hpp>

#include "etacong/hecke.hpp"
#include "etacong/spaces.hpp"
#include "etacong/version.hpp"

// Certification: compute the matrix of T_{m^2} on the invariant basis,
// assemble the block companion matrix, find its orders in PGL and GL
// over Z/ell^j Z, and emit a machine-readable certificate from which the
// vanishing and periodicity congruence families follow.

namespace etacong {

struct HeckeMatrixRecord {
    CongruenceParams params;
    u64 m = 0;
    std::size_t dim = 0;
    // Operator matrix in the usual column convention: column j holds the
    // basis coefficients of T_{m^2}(f_j).
    ModMatrix matrix;
    bool residual_checked = false;
    std::size_t precision_used = 0;  // input coefficients per basis element

    // The action on the column vector of basis expansions,
    // fvec | T_{m^2} = A fvec, is the transpose.
    ModMatrix row_action() const { return matrix.transpose(); }
};

// Expands the invariant basis to m^2 * (Sturm + margin) coefficients,
// applies T_{m^2} in the ambient space M_s(Gamma_0(p D^2), (-p | .)),
// and solves against the basis by forward substitution.  Any nonzero
// residual through the Sturm bound is fatal: it would contradict the
// invariance of the subspace.
inline HeckeMatrixRecord hecke_matrix(const CongruenceParams& P, u64 m,
                                      std::size_t margin = 16) {
    if (P.p != 2 && P.p != 3 && P.p != 5)
        throw error("hecke_matrix: supported only for p in {2, 3, 5}");
    if (m < 5 || !is_prime(m))
        throw error("hecke_matrix: m must be a prime >= 5");
    if (m == P.ell || m == static_cast<u64>(P.p))
        throw error("hecke_matrix: m must differ from ell and p");

    ModM ring(P.modulus);
    const i64 level = P.p * P.D * P.D;
    const std::size_t sturm = sturm_precision(P.s, level);
    const std::size_t out_len = sturm + margin;
    const std::size_t in_len = static_cast<std::size_t>(m) * m * out_len;

    auto basis = invariant_basis(P, in_len, ring, margin);
    const std::size_t d = basis.elements.size();
    std::vector<Series<ModM>> basis_trunc;
    for (const auto& f : basis.elements)
        basis_trunc.push_back(truncate(f, out_len));

    HeckeContext ctx{P.s, level, CharSpec{-P.p}};
    HeckeMatrixRecord rec{P, m, d, ModMatrix(d, ring), false, in_len};
    for (std::size_t r = 0; r < d; ++r) {
        auto image = hecke_t(basis.elements[r], static_cast<i64>(m) * m, ctx);
        auto [coeffs, residual] =
            forward_substitute(std::move(image), basis_trunc,
                               basis.lead_exponents);
        if (auto bad = residual.leading_index())
            throw residual_error(
                "hecke_matrix: T_{m^2} image of basis element " +
                std::to_string(r) + " has nonzero residual at q^" +
                std::to_string(*bad) + " (p=" + std::to_string(P.p) +
                ", ell=" + std::to_string(P.ell) + ", j=" +
                std::to_string(P.j) + ", m=" + std::to_string(m) + ")");
        for (std::size_t c = 0; c < d; ++c) rec.matrix.at(c, r) = coeffs[c];
    }
    rec.residual_checked = true;
    return rec;
}

inline ModMatrix companion_of(const HeckeMatrixRecord& rec) {
    int psi_m = kronecker(-rec.params.p, static_cast<i64>(rec.m));
    return block_companion(rec.row_action(), rec.params.s, psi_m, rec.m);
}

// phi(ell^j), the unit-group exponent bound used by the order search.
inline u64 unit_group_order(const CongruenceParams& P) {
    return P.modulus / P.ell * (P.ell - 1);
}

struct Certificate {
    int p = 0;
    u64 ell = 0;
    int j = 0;
    u64 m = 0;
    i64 s = 0;
    std::size_t dim = 0;
    u64 modulus = 0;
    std::vector<u64> matrix;  // row-major
    u64 scalar_c = 0;
    u64 order_pgl_J = 0;
    u64 order_gl_N = 0;
    std::string congruence_vanishing;
    std::string congruence_periodic;
    std::size_t precision = 0;
    std::string tool_version;
    std::string created_at;
    bool from_cache = false;  // runtime flag, not serialized
};

inline std::string iso8601_now() {
    auto t = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Renders the two congruence families entailed by the orders: the
// vanishing family with exponent 2 J v - 1 and the periodicity family
// with period 2 N in the exponent of m.
inline Certificate make_certificate(const HeckeMatrixRecord& rec,
                                    const MatrixOrders& ord) {
    const CongruenceParams& P = rec.params;
    Certificate c;
    c.p = P.p;
    c.ell = P.ell;
    c.j = P.j;
    c.m = rec.m;
    c.s = P.s;
    c.dim = rec.dim;
    c.modulus = P.modulus;
    c.matrix = rec.matrix.entries();
    c.scalar_c = ord.scalar;
    c.order_pgl_J = ord.order_pgl;
    c.order_gl_N = ord.order_gl;
    const std::string pf = "p_[1," + std::to_string(P.p) + "]";
    const std::string lj = std::to_string(P.modulus);
    const std::string ms = std::to_string(rec.m);
    const std::string Ds = std::to_string(P.D);
    c.congruence_vanishing =
        pf + "((" + lj + "*" + ms + "^(" + std::to_string(2 * ord.order_pgl) +
        "v-1)*n + 1)/" + Ds + ") == 0 (mod " + lj +
        ") for all v >= 1 and all n >= 1 not divisible by " + ms;
    c.congruence_periodic =
        pf + "((" + lj + "*" + ms + "^w*n + 1)/" + Ds + ") == " + pf + "((" +
        lj + "*" + ms + "^(" + std::to_string(2 * ord.order_gl) +
        "+w)*n + 1)/" + Ds + ") (mod " + lj +
        ") for all w >= 0 and all n >= 0";
    c.precision = rec.precision_used;
    c.tool_version = kToolVersion;
    c.created_at = iso8601_now();
    return c;
}

inline nlohmann::ordered_json certificate_json(const Certificate& c) {
    nlohmann::ordered_json out;
    out["p"] = c.p;
    out["ell"] = c.ell;
    out["j"] = c.j;
    out["m"] = c.m;
    out["s"] = c.s;
    out["dim"] = c.dim;
    out["modulus"] = c.modulus;
    out["matrix"] = c.matrix;
    out["scalar_c"] = c.scalar_c;
    out["order_pgl_J"] = c.order_pgl_J;
    out["order_gl_N"] = c.order_gl_N;
    out["congruence_vanishing"] = c.congruence_vanishing;
    out["congruence_periodic"] = c.congruence_periodic;
    out["precision"] = c.precision;
    out["tool_version"] = c.tool_version;
    out["created_at"] = c.created_at;
    return out;
}

inline Certificate certificate_from_json(const nlohmann::json& in) {
    Certificate c;
    c.p = in.at("p").get<int>();
    c.ell = in.at("ell").get<u64>();
    c.j = in.at("j").get<int>();
    c.m = in.at("m").get<u64>();
    c.s = in.at("s").get<i64>();
    c.dim = in.at("dim").get<std::size_t>();
    c.modulus = in.at("modulus").get<u64>();
    c.matrix = in.at("matrix").get<std::vector<u64>>();
    c.scalar_c = in.at("scalar_c").get<u64>();
    c.order_pgl_J = in.at("order_pgl_J").get<u64>();
    c.order_gl_N = in.at("order_gl_N").get<u64>();
    c.congruence_vanishing = in.at("congruence_vanishing").get<std::string>();
    c.congruence_periodic = in.at("congruence_periodic").get<std::string>();
    c.precision = in.at("precision").get<std::size_t>();
    c.tool_version = in.at("tool_version").get<std::string>();
    c.created_at = in.at("created_at").get<std::string>();
    return c;
}

// Certificates live as one JSON file per parameter tuple; writes go
// through a temp file and an atomic rename so concurrent scan workers
// never expose partial files.
class CertificateStore {
    std::filesystem::path dir_;

public:
    explicit CertificateStore(std::filesystem::path dir)
        : dir_(std::move(dir)) {}

    const std::filesystem::path& dir() const { return dir_; }

    std::filesystem::path path_for(int p, u64 ell, int j, u64 m) const {
        return dir_ / ("cert_p" + std::to_string(p) + "_l" +
                       std::to_string(ell) + "_j" + std::to_string(j) + "_m" +
                       std::to_string(m) + ".json");
    }

    std::optional<Certificate> load(int p, u64 ell, int j, u64 m) const {
        auto path = path_for(p, ell, j, m);
        std::ifstream in(path);
        if (!in) return std::nullopt;
        nlohmann::json doc;
        in >> doc;
        auto c = certificate_from_json(doc);
        c.from_cache = true;
        return c;
    }

    void save(const Certificate& c) const {
        std::filesystem::create_directories(dir_);
        auto path = path_for(c.p, c.ell, c.j, c.m);
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp);
            if (!out)
                throw io_error("CertificateStore: cannot write " +
                               tmp.string());
            out << certificate_json(c).dump(2) << "\n";
        }
        std::filesystem::rename(tmp, path);
    }
};

// Full certification for one (p, ell, j, m): cached load when present,
// otherwise matrix + orders + store write.
inline Certificate certify(const CongruenceParams& P, u64 m,
                           const CertificateStore& store,
                           std::size_t margin = 16,
                           u64 order_cap = 10'000'000) {
    if (auto cached = store.load(P.p, P.ell, P.j, m)) return *cached;
    auto rec = hecke_matrix(P, m, margin);
    auto ord = matrix_orders(companion_of(rec), unit_group_order(P),
                             order_cap);
    auto cert = make_certificate(rec, ord);
    store.save(cert);
    return cert;
}

}  // namespace etacong
