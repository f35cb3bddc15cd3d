#pragma once

#include <cstdint>
#include <string>

#include "normsys/errors.hpp"

namespace normsys {

// Residues are stored as plain uint32_t in [0, q).  FqScalar is the value
// type used at API boundaries; arithmetic lives on Fq, the field context,
// so that a lone residue never floats around without its modulus.
using FqScalar = std::uint32_t;

inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Prime field F_q.  Construction rejects non-prime moduli: extension fields
// are out of scope, and silently treating Z/q as a field for composite q
// would corrupt every rank computation downstream.
class Fq {
public:
    explicit Fq(std::uint32_t q) : q_(q) {
        if (!is_prime_u32(q))
            throw ParseError("modulus " + std::to_string(q) + " is not prime");
    }

    std::uint32_t q() const { return q_; }

    FqScalar reduce(long long v) const {
        long long r = v % static_cast<long long>(q_);
        if (r < 0) r += q_;
        return static_cast<FqScalar>(r);
    }

    FqScalar add(FqScalar a, FqScalar b) const {
        FqScalar s = a + b;
        return s >= q_ ? s - q_ : s;
    }

    FqScalar sub(FqScalar a, FqScalar b) const { return a >= b ? a - b : a + q_ - b; }

    FqScalar neg(FqScalar a) const { return a == 0 ? 0 : q_ - a; }

    FqScalar mul(FqScalar a, FqScalar b) const {
        return static_cast<FqScalar>((static_cast<std::uint64_t>(a) * b) % q_);
    }

    FqScalar pow(FqScalar a, std::uint64_t e) const {
        FqScalar r = 1 % q_, base = a % q_;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    // a^(q-2); q prime so this is the inverse of any nonzero a.
    FqScalar inv(FqScalar a) const {
        if (a == 0) throw DimensionMismatch("inverse of zero in F_" + std::to_string(q_));
        return pow(a, q_ - 2);
    }

    bool operator==(const Fq& o) const { return q_ == o.q_; }
    bool operator!=(const Fq& o) const { return q_ != o.q_; }

private:
    std::uint32_t q_;
};

}  // namespace normsys
