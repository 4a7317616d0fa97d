#pragma once

#include <map>
#include <tuple>

#include "etacong/etaquot.hpp"
#include "etacong/params.hpp"

// Echelonized q-expansion bases of M_k(Gamma_0(p)) for p in {2, 3, 5}
// (trivial character, even weight), built from monomials in the
// generator catalog, and bases of the invariant spaces
//   { (eta(Dz) eta(Dpz))^y H(Dz) : H in M_k(Gamma_0(p)) }.
//
// The construction never assumes the monomials span: it row-reduces and
// asserts the achieved rank against the dimension formula, failing
// loudly on any deficiency or non-unit pivot.

namespace etacong {

inline i64 dim_mk(int p, i64 k) {
    if (k < 0) throw error("dim_mk: negative weight");
    if (k % 2 != 0) throw error("dim_mk: odd weight is unsupported");
    switch (p) {
        case 2: return k / 4 + 1;
        case 3: return k / 3 + 1;
        case 5: return 2 * (k / 4) + 1;
        default:
            throw error("dim_mk: unsupported level " + std::to_string(p));
    }
}

// Sufficient number of initial coefficients for equality testing in
// M_s(Gamma_0(N)): ceil(s * idx(N) / 12) + 1 with idx the index of
// Gamma_0(N) in SL_2(Z).
inline std::size_t sturm_precision(i64 weight, i64 level) {
    if (weight < 0 || level < 1) throw error("sturm_precision: bad input");
    i64 idx = level;
    for (u64 r : prime_factors(static_cast<u64>(level)))
        idx = idx / static_cast<i64>(r) * static_cast<i64>(r + 1);
    return static_cast<std::size_t>((weight * idx + 11) / 12 + 1);
}

// A linear combination of catalog monomials; each monomial is the vector
// of exponents over the catalog entries.
template <class R>
using MonomialCombo =
    std::vector<std::pair<std::vector<i64>, typename R::Value>>;

template <class R>
struct SpaceBasis {
    int p = 0;
    i64 k = 0;
    R ring;
    std::size_t prec = 0;
    std::vector<GeneratorForm> catalog;
    std::vector<Series<R>> elements;            // offset 0, pivot 1
    std::vector<MonomialCombo<R>> provenance;   // elements as combos
    std::vector<i64> lead_exponents;            // 0, 1, ..., dim-1
};

// Expansion of prod_i catalog[i]^mono[i] evaluated at Dz, times the
// prefactor (eta(Dz) eta(Dpz))^y, re-expressed at offset 0.
template <class R>
Series<R> monomial_expansion(const std::vector<GeneratorForm>& catalog,
                             const std::vector<i64>& mono, std::size_t prec,
                             const R& ring, i64 D = 1, i64 y = 0) {
    if (mono.size() != catalog.size())
        throw error("monomial_expansion: exponent count mismatch");
    int p = catalog.at(0).p;
    std::map<i64, i64> eta;
    if (y != 0) {
        eta[D] += y;
        eta[D * p] += y;
    }
    i64 e2_power = 0;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        if (mono[i] == 0) continue;
        if (mono[i] < 0) throw error("monomial_expansion: negative exponent");
        if (catalog[i].kind == GeneratorForm::Kind::eisenstein2) {
            e2_power += mono[i];
        } else {
            for (const auto& [d, r] : catalog[i].eta.exponents)
                eta[D * d] += mono[i] * r;
        }
    }
    for (auto it = eta.begin(); it != eta.end();)
        it = it->second == 0 ? eta.erase(it) : std::next(it);

    Series<R> ser = eta.empty()
                        ? Series<R>::one(ring, prec)
                        : etaquot_series(EtaQuotient(D * p, std::move(eta)),
                                         prec, ring);
    if (e2_power > 0) {
        std::size_t base = (prec + static_cast<std::size_t>(D) - 1) /
                           static_cast<std::size_t>(D);
        auto e2 = truncate(
            apply_v(eisenstein2_series(p, base, ring), D), prec);
        ser = series_mul(ser, series_pow(e2, e2_power));
    }
    return pad_to_offset24(ser, 0);
}

namespace detail {

// All catalog monomials of total weight k, sorted by leading exponent,
// then by Eisenstein power, then by reversed exponent vector; the first
// representative of each leading exponent is the one kept by the
// echelon insertion below.
inline std::vector<std::vector<i64>> weight_k_monomials(
    const std::vector<GeneratorForm>& catalog, i64 k) {
    const std::size_t ng = catalog.size() - 1;  // eta generators
    const i64 w = ng > 0 ? catalog[1].weight : 0;
    std::vector<i64> gen_lead(ng);
    for (std::size_t i = 0; i < ng; ++i)
        gen_lead[i] = catalog[i + 1].eta.offset24() / 24;

    std::vector<std::tuple<i64, i64, std::vector<i64>, std::vector<i64>>> keyed;
    for (i64 a = 0; 2 * a <= k; ++a) {
        if ((k - 2 * a) % w != 0) continue;
        i64 n = (k - 2 * a) / w;
        std::vector<i64> e(ng, 0);
        // iterate compositions of n into ng parts
        auto emit = [&]() {
            i64 lead = 0;
            for (std::size_t i = 0; i < ng; ++i) lead += gen_lead[i] * e[i];
            std::vector<i64> mono(catalog.size(), 0);
            mono[0] = a;
            for (std::size_t i = 0; i < ng; ++i) mono[i + 1] = e[i];
            std::vector<i64> rev(e.rbegin(), e.rend());
            keyed.emplace_back(lead, a, std::move(rev), std::move(mono));
        };
        if (ng == 1) {
            e[0] = n;
            emit();
        } else {
            // ng is 2 or 3 in the shipped catalogs
            for (i64 e0 = 0; e0 <= n; ++e0)
                for (i64 e1 = 0; e0 + e1 <= n; ++e1) {
                    e[0] = e0;
                    e[1] = e1;
                    if (ng == 3) {
                        e[2] = n - e0 - e1;
                        emit();
                    } else if (e0 + e1 == n) {
                        emit();
                    }
                }
        }
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::vector<i64>> out;
    out.reserve(keyed.size());
    for (auto& t : keyed) out.push_back(std::move(std::get<3>(t)));
    return out;
}

}  // namespace detail

// Echelon basis of M_k(Gamma_0(p)) by first-wins insertion of weight-k
// catalog monomials.  Monomials whose leading exponent is already
// pivoted are reduced; a reduction must terminate at zero (linear
// dependence) or produce rank beyond the dimension formula, which is
// fatal.  Pivots are normalized to 1 and must be units.
template <class R>
SpaceBasis<R> echelon_basis(int p, i64 k, std::size_t prec, const R& ring) {
    const i64 dim = dim_mk(p, k);
    const std::size_t sturm = sturm_precision(k, p);
    if (prec < sturm)
        throw precision_error(
            "echelon_basis: prec " + std::to_string(prec) +
            " is below the Sturm bound " + std::to_string(sturm));

    SpaceBasis<R> B{p, k, ring, prec, generator_catalog(p), {}, {}, {}};

    using Combo = std::map<std::vector<i64>, typename R::Value>;
    std::map<i64, std::size_t> pivot_of_lead;
    std::vector<Series<R>> rows;
    std::vector<Combo> combos;
    std::vector<i64> leads;

    auto insert_pivot = [&](Series<R> ser, Combo combo, i64 lead,
                            std::size_t li) {
        auto pv = ser[li];
        if (!ring.is_unit(pv))
            throw nonunit_error("echelon_basis: non-unit pivot at exponent " +
                                std::to_string(lead));
        auto ipv = ring.inv(pv);
        ser = series_scale(ser, ipv);
        for (auto& [mk, v] : combo) v = ring.mul(v, ipv);
        pivot_of_lead[lead] = rows.size();
        rows.push_back(std::move(ser));
        combos.push_back(std::move(combo));
        leads.push_back(lead);
    };

    // Phase 1: each monomial claims its raw leading exponent if free, so
    // the basis keeps the plain monomial with the fewest Eisenstein
    // factors at every reachable lead.
    std::vector<std::pair<Series<R>, Combo>> deferred;
    for (const auto& mono : detail::weight_k_monomials(B.catalog, k)) {
        Series<R> ser = monomial_expansion(B.catalog, mono, prec, ring);
        Combo combo;
        combo[mono] = ring.one();
        auto li = ser.leading_index();
        if (!li) continue;
        i64 lead = static_cast<i64>(*li);
        if (pivot_of_lead.count(lead))
            deferred.emplace_back(std::move(ser), std::move(combo));
        else
            insert_pivot(std::move(ser), std::move(combo), lead, *li);
    }

    // Phase 2: reduce the deferred monomials; each must vanish (a linear
    // dependence) or land on a lead no monomial reached directly.
    for (auto& [ser, combo] : deferred) {
        while (true) {
            auto li = ser.leading_index();
            if (!li) break;  // dependent on earlier rows; discard
            i64 lead = static_cast<i64>(*li);
            auto it = pivot_of_lead.find(lead);
            if (it == pivot_of_lead.end()) {
                insert_pivot(std::move(ser), std::move(combo), lead, *li);
                break;
            }
            auto c = ser[*li];
            ser = series_sub(ser, series_scale(rows[it->second], c));
            for (const auto& [mk, v] : combos[it->second]) {
                auto& slot = combo[mk];
                slot = ring.sub(slot, ring.mul(c, v));
                if (ring.is_zero(slot)) combo.erase(mk);
            }
        }
    }

    if (static_cast<i64>(rows.size()) != dim)
        throw rank_error("echelon_basis: catalog monomials span rank " +
                         std::to_string(rows.size()) + " but dim M_" +
                         std::to_string(k) + "(Gamma_0(" + std::to_string(p) +
                         ")) = " + std::to_string(dim));

    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return leads[a] < leads[b]; });
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (leads[order[i]] != static_cast<i64>(i))
            throw rank_error(
                "echelon_basis: leading exponents are not 0..dim-1");
        B.elements.push_back(std::move(rows[order[i]]));
        B.lead_exponents.push_back(static_cast<i64>(i));
        MonomialCombo<R> pc(combos[order[i]].begin(), combos[order[i]].end());
        B.provenance.push_back(std::move(pc));
    }
    return B;
}

// ---------------------------------------------------------------------------
// Basis of the invariant space: elements (eta(Dz) eta(Dpz))^y H_i(Dz)
// for the echelon basis {H_i} of M_k(Gamma_0(p)).  Leading exponents
// form the progression lead0 + D i with lead0 = y (p+1) D / 24.

template <class R>
struct InvariantBasis {
    CongruenceParams params;
    SpaceBasis<R> weight_k;
    std::size_t prec = 0;
    std::vector<Series<R>> elements;  // offset 0
    std::vector<i64> lead_exponents;
    i64 ambient_level = 0;            // p D^2
    i64 ambient_weight = 0;           // s = k + y
};

template <class R>
InvariantBasis<R> invariant_basis(const CongruenceParams& P,
                                  std::size_t prec, const R& ring,
                                  std::size_t margin = 16) {
    if (P.p != 2 && P.p != 3 && P.p != 5)
        throw error("invariant_basis: supported only for p in {2, 3, 5}");
    if (P.y < 0 || P.k < 0)
        throw error("invariant_basis: requires y >= 0 and k >= 0");
    InvariantBasis<R> out{
        P,
        echelon_basis(P.p, P.k, sturm_precision(P.k, P.p) + margin, ring),
        prec,
        {},
        {},
        P.p * P.D * P.D,
        P.s};

    const i64 lead0 = P.y * (P.p + 1) * P.D / 24;
    for (std::size_t i = 0; i < out.weight_k.elements.size(); ++i) {
        Series<R> acc = Series<R>::zero(ring, 0, prec);
        for (const auto& [mono, c] : out.weight_k.provenance[i]) {
            auto term = monomial_expansion(out.weight_k.catalog, mono, prec,
                                           ring, P.D, P.y);
            acc = series_add(acc, series_scale(term, c));
        }
        i64 expect = lead0 + P.D * static_cast<i64>(i);
        auto le = acc.leading_exponent24();
        if (!le || *le != 24 * expect ||
            !(acc.coeff(expect) == ring.one()))
            throw error("invariant_basis: element " + std::to_string(i) +
                        " does not lead at q^" + std::to_string(expect) +
                        " with unit pivot");
        out.elements.push_back(std::move(acc));
        out.lead_exponents.push_back(expect);
    }
    return out;
}

// Express g in a triangular basis (strictly increasing leading
// exponents, pivots 1) by forward substitution.  Returns the
// coefficients and the residual after subtracting the fitted
// combination; callers decide whether a nonzero residual is fatal.
template <class R>
Series<R> linear_combination(const std::vector<typename R::Value>& coeffs,
                             const std::vector<Series<R>>& basis,
                             std::size_t prec) {
    if (coeffs.size() != basis.size())
        throw error("linear_combination: size mismatch");
    Series<R> acc = Series<R>::zero(basis.at(0).ring(), 0, prec);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].ring().is_zero(coeffs[i])) continue;
        acc = series_add(acc, series_scale(truncate(basis[i], prec),
                                           coeffs[i]));
    }
    return acc;
}

template <class R>
std::pair<std::vector<typename R::Value>, Series<R>> forward_substitute(
    Series<R> g, const std::vector<Series<R>>& basis,
    const std::vector<i64>& leads) {
    if (basis.size() != leads.size())
        throw error("forward_substitute: basis/lead size mismatch");
    std::vector<typename R::Value> coeffs;
    coeffs.reserve(basis.size());
    const auto& ring = g.ring();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        auto c = g.coeff(leads[i]);
        coeffs.push_back(c);
        if (!ring.is_zero(c))
            g = series_sub(g, series_scale(basis[i], c));
    }
    return {std::move(coeffs), std::move(g)};
}

}  // namespace etacong
