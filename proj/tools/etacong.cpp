// Command-line front end: parameter calculus, congruence certification,
// the built-in reference check suite, exact partition values, and grid
// scans writing certificates to a store.

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "etacong/verify.hpp"

namespace {

using namespace etacong;

// exit codes: 0 ok, 1 checks failed, 2 bad input, 3 residual violation,
// 4 order cap exceeded, 5 I/O
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResidual = 3;
constexpr int kExitOrderCap = 4;
constexpr int kExitIo = 5;

struct Config {
    std::size_t margin = 16;
    u64 order_cap = 10'000'000;
    unsigned threads = 0;  // 0 = hardware concurrency
    std::string store = "./certs";
    std::string format = "table";

    bool json() const { return format == "json"; }
    unsigned worker_count() const {
        unsigned n = threads ? threads : std::thread::hardware_concurrency();
        return n ? n : 1;
    }
};

nlohmann::ordered_json params_json(const CongruenceParams& P,
                                   const TableCheck& T) {
    nlohmann::ordered_json out;
    out["p"] = P.p;
    out["ell"] = P.ell;
    out["j"] = P.j;
    out["modulus"] = P.modulus;
    out["Delta"] = P.Delta;
    out["D"] = P.D;
    out["alpha"] = P.alpha;
    out["beta"] = P.beta;
    out["delta"] = P.delta;
    out["t"] = P.t;
    out["x"] = P.x.str();
    out["y"] = P.y;
    out["k"] = P.k;
    out["s"] = P.s;
    out["lambda"] = P.lambda;
    out["chi"] = P.chi.trivial()
                     ? "trivial"
                     : "kronecker(" + std::to_string(P.chi.disc) + "|.)";
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : T.rows) {
        nlohmann::ordered_json row;
        row["row"] = r.row;
        row["x"] = r.x.str();
        row["y"] = r.y;
        row["k"] = r.k;
        row["agrees"] = r.agrees;
        rows.push_back(row);
    }
    out["table_rows"] = rows;
    out["table_agrees"] = T.all_agree;
    out["table_matched"] = T.any_matched;
    return out;
}

int cmd_params(int p, u64 ell, int j, const Config& cfg) {
    auto T = crosscheck_tables(p, ell, j);
    auto doc = params_json(T.params, T);
    if (cfg.json()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        for (const auto& [key, value] : doc.items()) {
            if (key == "table_rows") {
                for (const auto& r : value)
                    std::cout << "table row " << r["row"].get<std::string>()
                              << ": x=" << r["x"].get<std::string>()
                              << " y=" << r["y"] << " k=" << r["k"]
                              << (r["agrees"].get<bool>() ? "  (agrees)"
                                                          : "  (DISAGREES)")
                              << "\n";
                continue;
            }
            std::cout << key << " = "
                      << (value.is_string() ? value.get<std::string>()
                                            : value.dump())
                      << "\n";
        }
    }
    return T.all_agree || !T.any_matched ? 0 : kExitFail;
}

int cmd_certify(int p, u64 ell, int j, u64 m, const Config& cfg) {
    CertificateStore store(cfg.store);
    auto P = compute_params(p, ell, j);
    auto cert = certify(P, m, store, cfg.margin, cfg.order_cap);
    if (cfg.json()) {
        auto doc = certificate_json(cert);
        doc["cached"] = cert.from_cache;
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "p=" << cert.p << " ell=" << cert.ell << " j=" << cert.j
                  << " m=" << cert.m << "  J=" << cert.order_pgl_J
                  << " N=" << cert.order_gl_N << " c=" << cert.scalar_c
                  << (cert.from_cache ? "  (cached)" : "") << "\n"
                  << cert.congruence_vanishing << "\n"
                  << cert.congruence_periodic << "\n"
                  << "store: " << store.path_for(p, ell, j, m).string()
                  << "\n";
    }
    return 0;
}

int cmd_verify_paper(u64 m1, u64 m2, const Config& cfg) {
    CertificateStore store(cfg.store);
    ReferenceOptions opt;
    opt.m_ex1 = m1;
    opt.m_ex2 = m2;
    opt.margin = cfg.margin;
    opt.order_cap = cfg.order_cap;
    opt.store = &store;
    auto report = run_reference_suite(opt);
    if (cfg.json())
        std::cout << report_json(report).dump(2) << "\n";
    else
        std::cout << report_table(report);
    return report.all_pass() ? 0 : kExitFail;
}

int cmd_pfn(int p, i64 n, const Config& cfg) {
    auto value = pfn_series(p, static_cast<std::size_t>(n) + 1, ZZ{})
                     .series.coeff(n);
    if (cfg.json()) {
        nlohmann::ordered_json doc;
        doc["p"] = p;
        doc["n"] = n;
        doc["value"] = value.str();
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << value.str() << "\n";
    }
    return 0;
}

int cmd_scan(int p, int j, const std::vector<u64>& ells,
             const std::vector<u64>& ms, const Config& cfg) {
    CertificateStore store(cfg.store);
    std::vector<std::pair<u64, u64>> grid;
    for (u64 ell : ells)
        for (u64 m : ms) {
            if (ell == m || ell == static_cast<u64>(p) ||
                m == static_cast<u64>(p))
                continue;
            grid.emplace_back(ell, m);
        }
    std::vector<std::string> lines(grid.size());
    std::vector<int> codes(grid.size(), 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < grid.size();) {
            auto [ell, m] = grid[i];
            std::ostringstream os;
            try {
                auto cert = certify(compute_params(p, ell, j), m, store,
                                    cfg.margin, cfg.order_cap);
                os << "ell=" << ell << " m=" << m
                   << "  J=" << cert.order_pgl_J << " N=" << cert.order_gl_N
                   << " c=" << cert.scalar_c
                   << (cert.from_cache ? "  (cached)" : "");
            } catch (const residual_error& e) {
                os << "ell=" << ell << " m=" << m << "  ERROR " << e.what();
                codes[i] = kExitResidual;
            } catch (const order_cap_error& e) {
                os << "ell=" << ell << " m=" << m << "  ERROR " << e.what();
                codes[i] = kExitOrderCap;
            } catch (const error& e) {
                os << "ell=" << ell << " m=" << m << "  ERROR " << e.what();
                codes[i] = kExitUsage;
            }
            lines[i] = os.str();
        }
    };
    std::vector<std::thread> pool;
    unsigned nw = std::min<std::size_t>(cfg.worker_count(), grid.size());
    for (unsigned t = 0; t + 1 < nw; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    if (cfg.json()) {
        nlohmann::ordered_json doc = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            auto cert = store.load(p, grid[i].first, j, grid[i].second);
            if (cert) doc.push_back(certificate_json(*cert));
        }
        std::cout << doc.dump(2) << "\n";
    } else {
        for (const auto& line : lines) std::cout << line << "\n";
        std::cout << grid.size() << " grid points, store " << cfg.store
                  << "\n";
    }
    for (int c : codes)
        if (c != 0) return c;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"congruence engine for two-color partition functions"};
    app.require_subcommand(1);

    Config cfg;
    app.add_option("--prec-margin", cfg.margin,
                   "extra coefficients beyond the Sturm bound");
    app.add_option("--order-cap", cfg.order_cap,
                   "iteration cap for the matrix order search");
    app.add_option("--threads", cfg.threads,
                   "worker threads for scan (default: all cores)");
    app.add_option("--store", cfg.store, "certificate directory");
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"table", "json"}));

    int p = 0, j = 1;
    u64 ell = 0, m = 0;
    i64 n = 0;
    u64 m1 = 7, m2 = 23;
    std::vector<u64> ells, ms;

    auto* sub_params =
        app.add_subcommand("params", "derive congruence parameters");
    sub_params->add_option("-p,--p", p, "prime p")->required();
    sub_params->add_option("-l,--ell", ell, "prime ell >= 5")->required();
    sub_params->add_option("-j,--j", j, "power j >= 1")->required();
    sub_params->fallthrough();

    auto* sub_certify = app.add_subcommand(
        "certify", "compute a Hecke matrix, its orders, and a certificate");
    sub_certify->add_option("-p,--p", p)->required();
    sub_certify->add_option("-l,--ell", ell)->required();
    sub_certify->add_option("-j,--j", j)->required();
    sub_certify->add_option("-m,--m", m, "Hecke index prime")->required();
    sub_certify->fallthrough();

    auto* sub_verify = app.add_subcommand(
        "verify-paper", "run the built-in reference check suite");
    sub_verify->add_option("--m1", m1,
                           "Hecke prime for the mod-13 example (7 compares "
                           "against the published values)");
    sub_verify->add_option("--m2", m2,
                           "Hecke prime for the mod-49 example (23 compares "
                           "against the published values)");
    sub_verify->fallthrough();

    auto* sub_pfn =
        app.add_subcommand("pfn", "exact two-color partition value");
    sub_pfn->add_option("-p,--p", p)->required();
    sub_pfn->add_option("-n,--n", n)->required();
    sub_pfn->fallthrough();

    auto* sub_scan =
        app.add_subcommand("scan", "certify a grid of (ell, m) pairs");
    sub_scan->add_option("-p,--p", p)->required();
    sub_scan->add_option("-j,--j", j)->required();
    sub_scan->add_option("--ell", ells, "ell values")
        ->required()
        ->delimiter(',');
    sub_scan->add_option("--m", ms, "m values")->required()->delimiter(',');
    sub_scan->fallthrough();

    CLI11_PARSE(app, argc, argv);

    if (const char* env = std::getenv("ETACONG_STORE")) cfg.store = env;

    try {
        if (sub_params->parsed()) return cmd_params(p, ell, j, cfg);
        if (sub_certify->parsed()) return cmd_certify(p, ell, j, m, cfg);
        if (sub_verify->parsed()) return cmd_verify_paper(m1, m2, cfg);
        if (sub_pfn->parsed()) return cmd_pfn(p, n, cfg);
        if (sub_scan->parsed()) return cmd_scan(p, j, ells, ms, cfg);
    } catch (const residual_error& e) {
        std::cerr << "residual violation: " << e.what() << "\n";
        return kExitResidual;
    } catch (const order_cap_error& e) {
        std::cerr << "order cap exceeded: " << e.what() << "\n";
        return kExitOrderCap;
    } catch (const io_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
