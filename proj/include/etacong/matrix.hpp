#pragma once

#include <optional>
#include <vector>

#include "etacong/common.hpp"
#include "etacong/rings.hpp"

// Dense square matrices over Z/mZ, sized for the block matrices of the
// order search (a few dozen rows), plus the order-finding routine itself.

namespace etacong {

class ModMatrix {
    std::size_t n_ = 0;
    ModM ring_;
    std::vector<u64> a_;  // row-major

public:
    ModMatrix(std::size_t n, ModM ring)
        : n_(n), ring_(ring), a_(n * n, 0) {}

    static ModMatrix identity(std::size_t n, ModM ring) {
        ModMatrix I(n, ring);
        for (std::size_t i = 0; i < n; ++i) I.at(i, i) = ring.one();
        return I;
    }

    std::size_t size() const { return n_; }
    const ModM& ring() const { return ring_; }
    u64 modulus() const { return ring_.modulus(); }

    u64& at(std::size_t r, std::size_t c) { return a_.at(r * n_ + c); }
    u64 at(std::size_t r, std::size_t c) const { return a_.at(r * n_ + c); }
    const std::vector<u64>& entries() const { return a_; }

    void set_from_int(std::size_t r, std::size_t c, i64 v) {
        at(r, c) = ring_.from_int(v);
    }

    bool operator==(const ModMatrix& o) const {
        return n_ == o.n_ && ring_ == o.ring_ && a_ == o.a_;
    }

    friend ModMatrix operator*(const ModMatrix& A, const ModMatrix& B) {
        require_same_ring(A.ring_, B.ring_, "ModMatrix::operator*");
        if (A.n_ != B.n_) throw error("ModMatrix: size mismatch");
        const std::size_t n = A.n_;
        const u64 m = A.modulus();
        ModMatrix C(n, A.ring_);
        const bool narrow = m < (u64(1) << 32);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                u64 v = A.at(i, k);
                if (v == 0) continue;
                if (narrow) {
                    for (std::size_t j = 0; j < n; ++j) {
                        u64 t = C.at(i, j) +
                                static_cast<u64>(
                                    (static_cast<u128>(v) * B.at(k, j)) % m);
                        C.at(i, j) = t >= m ? t - m : t;
                    }
                } else {
                    for (std::size_t j = 0; j < n; ++j)
                        C.at(i, j) = addmod(C.at(i, j),
                                            mulmod(v, B.at(k, j), m), m);
                }
            }
        return C;
    }

    ModMatrix pow(u64 e) const {
        ModMatrix r = identity(n_, ring_);
        ModMatrix b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }

    // c with *this == c I, if the matrix is scalar.
    std::optional<u64> scalar_value() const {
        u64 c = at(0, 0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) {
                if (i == j ? at(i, j) != c : at(i, j) != 0)
                    return std::nullopt;
            }
        return c;
    }

    bool is_identity() const {
        auto c = scalar_value();
        return c && *c == ring_.one();
    }

    ModMatrix transpose() const {
        ModMatrix T(n_, ring_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) T.at(j, i) = at(i, j);
        return T;
    }
};

// Multiplicative order of a unit mod m, given the group exponent bound
// phi; computed by stripping prime factors of phi.
inline u64 unit_order(u64 c, u64 m, u64 phi) {
    if (std::gcd(c, m) != 1) throw nonunit_error("unit_order: not a unit");
    u64 ord = phi;
    for (u64 q : prime_factors(phi)) {
        while (ord % q == 0 && powmod(c, ord / q, m) == 1) ord /= q;
    }
    if (powmod(c, ord, m) != 1)
        throw error("unit_order: phi is not an exponent multiple");
    return ord;
}

struct MatrixOrders {
    u64 order_pgl = 0;  // least J with A^J scalar
    u64 scalar = 0;     // the scalar c in A^J = c I
    u64 order_gl = 0;   // least N with A^N = I; equals J * ord(c)
};

// Sequential powering with an iteration cap.  `resume_from` allows
// continuing a capped search: pass the power A^resume_index reported by
// the order_cap_error.  phi must be the group-exponent bound for units
// mod the matrix modulus (phi(ell^j) for prime powers).
inline MatrixOrders matrix_orders(const ModMatrix& A, u64 phi, u64 cap,
                                  const ModMatrix* resume_from = nullptr,
                                  u64 resume_index = 0) {
    if (cap < 1) throw error("matrix_orders: cap must be >= 1");
    ModMatrix power = resume_from ? *resume_from : A;
    u64 i = resume_from ? resume_index : 1;
    for (;; ++i, power = power * A) {
        if (auto c = power.scalar_value()) {
            if (*c == 0) throw nonunit_error("matrix_orders: singular matrix");
            MatrixOrders out;
            out.order_pgl = i;
            out.scalar = *c;
            out.order_gl = i * unit_order(*c, A.modulus(), phi);
            if (!A.pow(out.order_gl).is_identity())
                throw error("matrix_orders: order verification failed");
            return out;
        }
        if (i >= cap)
            throw order_cap_error(
                "matrix_orders: no scalar power within cap " +
                    std::to_string(cap),
                i, power.entries());
    }
}

}  // namespace etacong
