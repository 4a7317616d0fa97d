#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

// Shared small utilities: error taxonomy, word-sized modular arithmetic,
// Kronecker symbol, primality, exact rationals on int64.

namespace etacong {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// ---------------------------------------------------------------------------
// Errors.  The CLI maps these to distinct exit codes.

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operands live over different moduli / incompatible rings.
struct ring_mismatch_error : error { using error::error; };

// Offset (fractional exponent) misuse: misaligned sums, U/V on fractional
// offsets, nonzero coefficients at negative exponents.
struct offset_error : error { using error::error; };

// Caller did not supply enough coefficients for the requested computation.
struct precision_error : error { using error::error; };

// Leading coefficient or echelon pivot is not invertible.
struct nonunit_error : error { using error::error; };

// Spanning set failed to reach the expected dimension.
struct rank_error : error { using error::error; };

// A Hecke image failed to lie in the invariant space (nonzero residual).
struct residual_error : error { using error::error; };

// Filesystem trouble while reading or writing artifacts.
struct io_error : error { using error::error; };

// Matrix order search exhausted its iteration cap.  Carries the partial
// state so a caller can resume.
struct order_cap_error : error {
    u64 iterations_done;
    std::vector<u64> last_power;  // row-major entries of A^iterations_done
    order_cap_error(const std::string& msg, u64 it, std::vector<u64> power)
        : error(msg), iterations_done(it), last_power(std::move(power)) {}
};

// ---------------------------------------------------------------------------
// Word-sized modular arithmetic.  Moduli up to 2^63 - 1.

inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;  // a, b < m < 2^63, no overflow
    return s >= m ? s - m : s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Inverse of a mod m via extended Euclid; throws nonunit_error if gcd != 1.
inline u64 invmod(u64 a, u64 m) {
    i64 t = 0, new_t = 1;
    i64 r = static_cast<i64>(m), new_r = static_cast<i64>(a % m);
    while (new_r != 0) {
        i64 q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1)
        throw nonunit_error("invmod: value " + std::to_string(a) +
                            " is not a unit modulo " + std::to_string(m));
    return static_cast<u64>(t < 0 ? t + static_cast<i64>(m) : t);
}

// ---------------------------------------------------------------------------
// Primality (deterministic Miller-Rabin for 64-bit inputs).

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                  29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                  29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Distinct prime factors by trial division (intended for small inputs:
// levels, ell - 1 and the like).
inline std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// ---------------------------------------------------------------------------
// Kronecker symbol (a|n), fully general in the second argument.

inline int kronecker(i64 a, i64 n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) sign = -sign;
    }
    // strip 2s from n using (a|2) = (2|a) rule
    int v2 = 0;
    while ((n & 1) == 0) n >>= 1, ++v2;
    if (v2 & 1) {
        i64 am8 = ((a % 8) + 8) % 8;
        if (am8 == 3 || am8 == 5) sign = -sign;
        else if (am8 == 0 || am8 == 2 || am8 == 4 || am8 == 6) return 0;
    }
    a %= n;
    if (a < 0) a += n;
    // Jacobi symbol on odd positive n
    while (a != 0) {
        int t = 0;
        while ((a & 1) == 0) a >>= 1, ++t;
        if (t & 1) {
            i64 nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) sign = -sign;
        }
        if ((a % 4) == 3 && (n % 4) == 3) sign = -sign;
        std::swap(a, n);
        a %= n;
    }
    return n == 1 ? sign : 0;
}

// A quadratic character given by a Kronecker symbol (disc | .).
// disc == 0 encodes the trivial character (constant 1).
struct CharSpec {
    i64 disc = 0;

    bool trivial() const { return disc == 0; }
    int eval(i64 n) const { return trivial() ? 1 : kronecker(disc, n); }
    bool operator==(const CharSpec&) const = default;
};

// ---------------------------------------------------------------------------
// Exact rationals on int64 (parameter calculus, cusp orders).

struct Rat64 {
    i64 num = 0;
    i64 den = 1;

    Rat64() = default;
    Rat64(i64 n) : num(n), den(1) {}
    Rat64(i64 n, i64 d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw error("Rat64: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        i64 g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    bool is_integer() const { return den == 1; }

    // floor toward minus infinity
    i64 floor() const {
        if (num >= 0) return num / den;
        return -((-num + den - 1) / den);
    }

    friend Rat64 operator+(Rat64 a, Rat64 b) {
        return Rat64(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rat64 operator-(Rat64 a, Rat64 b) {
        return Rat64(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rat64 operator*(Rat64 a, Rat64 b) {
        return Rat64(a.num * b.num, a.den * b.den);
    }
    friend Rat64 operator/(Rat64 a, Rat64 b) {
        if (b.num == 0) throw error("Rat64: division by zero");
        return Rat64(a.num * b.den, a.den * b.num);
    }
    bool operator==(const Rat64&) const = default;

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

}  // namespace etacong
