#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "etacong/rings.hpp"

// Truncated q-series with a rational exponent offset (denominator fixed
// at 24, so eta-quotient prefactors q^(r/24) are representable exactly).
//
// A Series stores coefficients for the exponents
//     offset24/24 + 0, offset24/24 + 1, ..., offset24/24 + (prec - 1);
// everything below the offset is an exact zero, everything at or beyond
// the truncation point is unknown.  All operations are pure: they never
// mutate operands and never silently extend precision.

namespace etacong {

template <class R>
class Series {
public:
    using Ring = R;
    using Value = typename R::Value;

    Series(R ring, i64 offset24, std::vector<Value> coeffs)
        : ring_(std::move(ring)), off24_(offset24), c_(std::move(coeffs)) {}

    static Series zero(R ring, i64 offset24, std::size_t prec) {
        std::vector<Value> c(prec, ring.zero());
        return Series(std::move(ring), offset24, std::move(c));
    }

    static Series one(R ring, std::size_t prec) {
        if (prec == 0) throw precision_error("Series::one: prec must be >= 1");
        std::vector<Value> c(prec, ring.zero());
        c[0] = ring.one();
        return Series(std::move(ring), 0, std::move(c));
    }

    const R& ring() const { return ring_; }
    i64 offset24() const { return off24_; }
    std::size_t prec() const { return c_.size(); }
    const std::vector<Value>& coeffs() const { return c_; }

    const Value& operator[](std::size_t i) const { return c_.at(i); }

    // First unknown exponent, in 24ths.
    i64 end24() const { return off24_ + 24 * static_cast<i64>(c_.size()); }

    bool integral_offset() const { return off24_ % 24 == 0; }

    i64 offset_int() const {
        if (!integral_offset())
            throw offset_error("series has fractional offset " +
                               std::to_string(off24_) + "/24");
        return off24_ / 24;
    }

    // Coefficient of q^(e24/24).  Exact zero below the offset or off the
    // stored exponent lattice; throws if the exponent is past the
    // truncation point (the value there is unknown, not zero).
    Value coeff24(i64 e24) const {
        if (e24 >= end24())
            throw precision_error("coefficient beyond stored precision");
        i64 rel = e24 - off24_;
        if (rel < 0 || rel % 24 != 0) return ring_.zero();
        return c_[static_cast<std::size_t>(rel / 24)];
    }

    // Coefficient of q^e for integral e.
    Value coeff(i64 e) const { return coeff24(24 * e); }

    // Index of the first nonzero stored coefficient, if any.
    std::optional<std::size_t> leading_index() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!ring_.is_zero(c_[i])) return i;
        return std::nullopt;
    }

    std::optional<i64> leading_exponent24() const {
        auto i = leading_index();
        if (!i) return std::nullopt;
        return off24_ + 24 * static_cast<i64>(*i);
    }

private:
    R ring_;
    i64 off24_;
    std::vector<Value> c_;
};

namespace detail {

// Nonzero terms of a series as (index, value) pairs, ascending.
template <class R>
std::vector<std::pair<std::size_t, typename R::Value>> support(
    const Series<R>& s) {
    std::vector<std::pair<std::size_t, typename R::Value>> t;
    for (std::size_t i = 0; i < s.prec(); ++i)
        if (!s.ring().is_zero(s[i])) t.emplace_back(i, s[i]);
    return t;
}

// res[k] = sum over (i, v) in sup with i <= k of v * a[k - i], for k < n.
// The word-sized modular path accumulates in 128 bits and reduces once
// per output coefficient when the modulus fits 32 bits.
template <class R>
std::vector<typename R::Value> gather_mul(
    const R& ring, const std::vector<typename R::Value>& a,
    const std::vector<std::pair<std::size_t, typename R::Value>>& sup,
    std::size_t n) {
    using V = typename R::Value;
    std::vector<V> res(n, ring.zero());
    if constexpr (std::is_same_v<R, ModM>) {
        const u64 m = ring.modulus();
        if (m < (u64(1) << 32)) {
            for (std::size_t k = 0; k < n; ++k) {
                u128 acc = 0;
                for (const auto& [i, v] : sup) {
                    if (i > k) break;
                    acc += static_cast<u128>(v) * a[k - i];
                }
                res[k] = static_cast<u64>(acc % m);
            }
            return res;
        }
        for (std::size_t k = 0; k < n; ++k) {
            u64 acc = 0;
            for (const auto& [i, v] : sup) {
                if (i > k) break;
                acc = addmod(acc, mulmod(v, a[k - i], m), m);
            }
            res[k] = acc;
        }
        return res;
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            V acc = ring.zero();
            for (const auto& [i, v] : sup) {
                if (i > k) break;
                acc += v * a[k - i];
            }
            res[k] = std::move(acc);
        }
        return res;
    }
}

// Quotient q with q * b = a through n coefficients, where sup holds the
// nonzero terms of b at indices >= 1 and inv0 = b[0]^-1.
template <class R>
std::vector<typename R::Value> gather_div(
    const R& ring, const std::vector<typename R::Value>& a,
    const std::vector<std::pair<std::size_t, typename R::Value>>& sup,
    const typename R::Value& inv0, std::size_t n) {
    using V = typename R::Value;
    std::vector<V> q(n, ring.zero());
    if constexpr (std::is_same_v<R, ModM>) {
        const u64 m = ring.modulus();
        if (m < (u64(1) << 32)) {
            for (std::size_t k = 0; k < n; ++k) {
                u128 acc = 0;
                for (const auto& [i, v] : sup) {
                    if (i > k) break;
                    acc += static_cast<u128>(v) * q[k - i];
                }
                u64 conv = static_cast<u64>(acc % m);
                q[k] = mulmod(submod(a[k] % m, conv, m), inv0, m);
            }
            return q;
        }
        for (std::size_t k = 0; k < n; ++k) {
            u64 acc = 0;
            for (const auto& [i, v] : sup) {
                if (i > k) break;
                acc = addmod(acc, mulmod(v, q[k - i], m), m);
            }
            q[k] = mulmod(submod(a[k], acc, m), inv0, m);
        }
        return q;
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            V acc = ring.zero();
            for (const auto& [i, v] : sup) {
                if (i > k) break;
                acc += v * q[k - i];
            }
            q[k] = (a[k] - acc) * inv0;
        }
        return q;
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Addition family.  Operands must share a ring, and their offsets must
// differ by an integral exponent; the result covers the range where both
// operands are known.

template <class R>
Series<R> series_add(const Series<R>& a, const Series<R>& b) {
    require_same_ring(a.ring(), b.ring(), "series_add");
    if ((a.offset24() - b.offset24()) % 24 != 0)
        throw offset_error("series_add: offset gap " +
                           std::to_string(a.offset24() - b.offset24()) +
                           "/24 is not an integer");
    const R& ring = a.ring();
    i64 off = std::min(a.offset24(), b.offset24());
    i64 end = std::min(a.end24(), b.end24());
    if (end < off) end = off;
    std::size_t n = static_cast<std::size_t>((end - off) / 24);
    std::vector<typename R::Value> c(n, ring.zero());
    for (std::size_t i = 0; i < n; ++i) {
        i64 e = off + 24 * static_cast<i64>(i);
        c[i] = ring.add(a.coeff24(e), b.coeff24(e));
    }
    return Series<R>(ring, off, std::move(c));
}

template <class R>
Series<R> series_scale(const Series<R>& a, const typename R::Value& v) {
    std::vector<typename R::Value> c(a.prec(), a.ring().zero());
    for (std::size_t i = 0; i < a.prec(); ++i) c[i] = a.ring().mul(a[i], v);
    return Series<R>(a.ring(), a.offset24(), std::move(c));
}

template <class R>
Series<R> series_neg(const Series<R>& a) {
    std::vector<typename R::Value> c(a.prec(), a.ring().zero());
    for (std::size_t i = 0; i < a.prec(); ++i) c[i] = a.ring().neg(a[i]);
    return Series<R>(a.ring(), a.offset24(), std::move(c));
}

template <class R>
Series<R> series_sub(const Series<R>& a, const Series<R>& b) {
    return series_add(a, series_neg(b));
}

// ---------------------------------------------------------------------------
// Multiplication: Cauchy product.  Offsets add; the relative precision is
// the minimum of the operands'.  The kernel iterates the support of the
// sparser operand, so multiplying by a pentagonal-sparse factor costs
// O(prec * sqrt(prec)); the summation order is fixed, and all arithmetic
// is exact, so the result never depends on which operand is chosen.

template <class R>
Series<R> series_mul(const Series<R>& a, const Series<R>& b) {
    require_same_ring(a.ring(), b.ring(), "series_mul");
    const R& ring = a.ring();
    std::size_t n = std::min(a.prec(), b.prec());
    i64 off = a.offset24() + b.offset24();
    if (n == 0) return Series<R>::zero(ring, off, 0);
    auto sa = detail::support(a);
    auto sb = detail::support(b);
    const auto& dense = (sb.size() <= sa.size()) ? a : b;
    const auto& sup = (sb.size() <= sa.size()) ? sb : sa;
    return Series<R>(ring, off,
                     detail::gather_mul(ring, dense.coeffs(), sup, n));
}

// Division a / b, requiring the leading stored coefficient of b to be a
// unit.  Back-substitution against the support of b, so division by a
// sparse series is as cheap as multiplication by it.
template <class R>
Series<R> series_div(const Series<R>& a, const Series<R>& b) {
    require_same_ring(a.ring(), b.ring(), "series_div");
    const R& ring = a.ring();
    if (b.prec() == 0) throw precision_error("series_div: empty divisor");
    if (!ring.is_unit(b[0]))
        throw nonunit_error("series_div: leading coefficient of divisor "
                            "is not a unit");
    std::size_t n = std::min(a.prec(), b.prec());
    i64 off = a.offset24() - b.offset24();
    auto sup = detail::support(b);
    if (!sup.empty() && sup.front().first == 0) sup.erase(sup.begin());
    return Series<R>(ring, off,
                     detail::gather_div(ring, a.coeffs(), sup,
                                        ring.inv(b[0]), n));
}

template <class R>
Series<R> series_inv(const Series<R>& a) {
    return series_div(Series<R>::one(a.ring(), a.prec()), a);
}

// Binary-exponentiation power; e < 0 inverts first (leading coefficient
// must then be a unit).  Offsets scale by e.
template <class R>
Series<R> series_pow(const Series<R>& a, i64 e) {
    if (e < 0) return series_pow(series_inv(a), -e);
    Series<R> result = Series<R>::one(a.ring(), a.prec());
    Series<R> base = a;
    u64 k = static_cast<u64>(e);
    while (k > 0) {
        if (k & 1) result = series_mul(result, base);
        if (k >>= 1) base = series_mul(base, base);
    }
    return result;
}

// ---------------------------------------------------------------------------
// U, V and twist operators on integral-offset expansions.
//
//   f | U_d  takes a(n) -> a(d n);   f | V_d  takes q^n -> q^(d n);
//   f twisted by the trivial character mod m zeroes a(n) for m | n.

template <class R>
Series<R> apply_u(const Series<R>& f, i64 d) {
    if (d < 1) throw error("apply_u: d must be >= 1");
    i64 off = f.offset_int();
    if (off < 0) {
        for (i64 e = -((-off + d - 1) / d) * d; e < 0; e += d)
            if (!f.ring().is_zero(f.coeff(e)))
                throw offset_error(
                    "apply_u: nonzero coefficient at negative exponent");
    }
    i64 end = off + static_cast<i64>(f.prec());  // first unknown exponent
    i64 nout = end > 0 ? (end + d - 1) / d : 0;
    std::vector<typename R::Value> c(static_cast<std::size_t>(nout),
                                     f.ring().zero());
    for (i64 k = 0; k < nout; ++k) {
        i64 e = d * k;
        if (e >= off) c[static_cast<std::size_t>(k)] = f.coeff(e);
    }
    return Series<R>(f.ring(), 0, std::move(c));
}

template <class R>
Series<R> apply_v(const Series<R>& f, i64 d) {
    if (d < 1) throw error("apply_v: d must be >= 1");
    i64 off = f.offset_int();
    std::size_t n = f.prec() * static_cast<std::size_t>(d);
    std::vector<typename R::Value> c(n, f.ring().zero());
    for (std::size_t i = 0; i < f.prec(); ++i)
        c[i * static_cast<std::size_t>(d)] = f[i];
    return Series<R>(f.ring(), 24 * off * d, std::move(c));
}

template <class R>
Series<R> twist_trivial(const Series<R>& f, i64 m) {
    if (m < 2) throw error("twist_trivial: modulus must be >= 2");
    i64 off = f.offset_int();
    std::vector<typename R::Value> c(f.coeffs());
    for (std::size_t i = 0; i < c.size(); ++i) {
        i64 e = off + static_cast<i64>(i);
        if (((e % m) + m) % m == 0) c[i] = f.ring().zero();
    }
    return Series<R>(f.ring(), f.offset24(), std::move(c));
}

// ---------------------------------------------------------------------------
// Conversions and reshaping helpers.

inline Series<ModM> reduce_mod(const Series<ZZ>& a, const ModM& ring) {
    std::vector<u64> c(a.prec());
    const boost::multiprecision::cpp_int m(ring.modulus());
    for (std::size_t i = 0; i < a.prec(); ++i) {
        boost::multiprecision::cpp_int r = a[i] % m;
        if (r < 0) r += m;
        c[i] = r.convert_to<u64>();
    }
    return Series<ModM>(ring, a.offset24(), std::move(c));
}

// Re-express with a smaller offset by prepending explicit zeros.
template <class R>
Series<R> pad_to_offset24(const Series<R>& a, i64 new_off24) {
    if (new_off24 == a.offset24()) return a;
    if (new_off24 > a.offset24() || (a.offset24() - new_off24) % 24 != 0)
        throw offset_error("pad_to_offset24: target offset must lie an "
                           "integral exponent below the current one");
    std::size_t pad =
        static_cast<std::size_t>((a.offset24() - new_off24) / 24);
    std::vector<typename R::Value> c(pad + a.prec(), a.ring().zero());
    for (std::size_t i = 0; i < a.prec(); ++i) c[pad + i] = a[i];
    return Series<R>(a.ring(), new_off24, std::move(c));
}

// Raise the offset, asserting that every dropped coefficient is zero.
template <class R>
Series<R> drop_below24(const Series<R>& a, i64 new_off24) {
    if (new_off24 == a.offset24()) return a;
    if (new_off24 < a.offset24() || (new_off24 - a.offset24()) % 24 != 0)
        throw offset_error("drop_below24: target offset must lie an "
                           "integral exponent above the current one");
    std::size_t drop =
        static_cast<std::size_t>((new_off24 - a.offset24()) / 24);
    if (drop > a.prec()) throw precision_error("drop_below24: underflow");
    for (std::size_t i = 0; i < drop; ++i)
        if (!a.ring().is_zero(a[i]))
            throw offset_error("drop_below24: nonzero coefficient dropped");
    std::vector<typename R::Value> c(a.coeffs().begin() + drop,
                                     a.coeffs().end());
    return Series<R>(a.ring(), new_off24, std::move(c));
}

// Truncate to at most n stored coefficients.
template <class R>
Series<R> truncate(const Series<R>& a, std::size_t n) {
    if (n >= a.prec()) return a;
    std::vector<typename R::Value> c(a.coeffs().begin(),
                                     a.coeffs().begin() + n);
    return Series<R>(a.ring(), a.offset24(), std::move(c));
}

// Exponent-wise agreement over the intersection of known ranges, which
// must span at least `through24` (same units as offsets).
template <class R>
bool series_agree(const Series<R>& a, const Series<R>& b, i64 through24) {
    i64 lo = std::min(a.offset24(), b.offset24());
    i64 hi = std::min(a.end24(), b.end24());
    if (hi < through24)
        throw precision_error("series_agree: operands too short");
    for (i64 e = lo; e < through24; ++e) {
        // walk both lattices; offsets may sit on different residues mod 24
        bool on_a = (e - a.offset24()) % 24 == 0;
        bool on_b = (e - b.offset24()) % 24 == 0;
        if (!on_a && !on_b) continue;
        auto va = on_a ? a.coeff24(e) : a.ring().zero();
        auto vb = on_b ? b.coeff24(e) : b.ring().zero();
        if (va != vb) return false;
    }
    return true;
}

}  // namespace etacong
