#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "etacong/common.hpp"

// Coefficient rings for truncated q-series: exact integers (ZZ) and
// Z/mZ with a runtime modulus (ModM).  Series arithmetic is templated on
// the ring; a ring instance travels with each series so that moduli are
// checked on every binary operation.

namespace etacong {

struct ZZ {
    using Value = boost::multiprecision::cpp_int;
    static constexpr bool modular = false;

    bool operator==(const ZZ&) const { return true; }

    Value from_int(i64 v) const { return Value(v); }
    Value zero() const { return Value(0); }
    Value one() const { return Value(1); }

    Value add(const Value& a, const Value& b) const { return a + b; }
    Value sub(const Value& a, const Value& b) const { return a - b; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value neg(const Value& a) const { return -a; }

    bool is_zero(const Value& a) const { return a.is_zero(); }
    bool is_unit(const Value& a) const { return a == 1 || a == -1; }

    Value inv(const Value& a) const {
        if (!is_unit(a))
            throw nonunit_error("ZZ: only +1/-1 are invertible, got " +
                                a.str());
        return a;
    }

    Value pow(const Value& a, u64 e) const {
        Value r(1), b(a);
        while (e > 0) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    std::string describe() const { return "ZZ"; }
};

class ModM {
    u64 m_;

public:
    using Value = u64;
    static constexpr bool modular = true;

    explicit ModM(u64 m) : m_(m) {
        if (m < 2) throw error("ModM: modulus must be at least 2");
        if (m > ((u64(1) << 63) - 1))
            throw error("ModM: modulus exceeds 2^63 - 1");
    }

    u64 modulus() const { return m_; }
    bool operator==(const ModM& o) const { return m_ == o.m_; }

    Value from_int(i64 v) const {
        i64 r = v % static_cast<i64>(m_);
        return static_cast<u64>(r < 0 ? r + static_cast<i64>(m_) : r);
    }
    Value zero() const { return 0; }
    Value one() const { return 1 % m_; }

    Value add(Value a, Value b) const { return addmod(a, b, m_); }
    Value sub(Value a, Value b) const { return submod(a, b, m_); }
    Value mul(Value a, Value b) const { return mulmod(a, b, m_); }
    Value neg(Value a) const { return a == 0 ? 0 : m_ - a; }

    bool is_zero(Value a) const { return a == 0; }
    bool is_unit(Value a) const { return std::gcd(a, m_) == 1; }
    Value inv(Value a) const { return invmod(a, m_); }
    Value pow(Value a, u64 e) const { return powmod(a, e, m_); }

    std::string describe() const {
        return "Z/" + std::to_string(m_) + "Z";
    }
};

template <class R>
void require_same_ring(const R& a, const R& b, const char* what) {
    if (!(a == b))
        throw ring_mismatch_error(std::string(what) + ": operands over " +
                                  a.describe() + " and " + b.describe());
}

}  // namespace etacong
