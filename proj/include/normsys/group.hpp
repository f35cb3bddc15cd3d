#pragma once

#include <cstdint>
#include <vector>

#include "normsys/errors.hpp"
#include "normsys/fq.hpp"

namespace normsys {

// The ambient group G = F_q^n.  Elements are addressed by their index in
// [0, q^n), little-endian in radix q: coordinate 1 is the least significant
// digit.  All coordinate arithmetic happens digit by digit on indices, so a
// dense table over G is just a flat vector addressed by these indices.
class Group {
public:
    Group(std::uint32_t q, std::uint32_t n, std::uint64_t max_table = Budgets{}.max_table)
        : field_(q), n_(n) {
        if (n == 0) throw DimensionMismatch("group dimension n must be >= 1");
        size_ = 1;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (size_ > max_table / q) throw BudgetExceeded("table size q^n exceeds budget");
            size_ *= q;
        }
    }

    const Fq& field() const { return field_; }
    std::uint32_t q() const { return field_.q(); }
    std::uint32_t n() const { return n_; }
    std::uint64_t size() const { return size_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t out = 0, place = 1;
        const std::uint32_t q = field_.q();
        for (std::uint32_t i = 0; i < n_; ++i) {
            out += ((a % q + b % q) % q) * place;
            a /= q;
            b /= q;
            place *= q;
        }
        return out;
    }

    std::uint64_t neg(std::uint64_t a) const {
        std::uint64_t out = 0, place = 1;
        const std::uint32_t q = field_.q();
        for (std::uint32_t i = 0; i < n_; ++i) {
            std::uint64_t d = a % q;
            out += (d ? q - d : 0) * place;
            a /= q;
            place *= q;
        }
        return out;
    }

    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

    std::uint64_t scalar_mul(FqScalar s, std::uint64_t a) const {
        std::uint64_t out = 0, place = 1;
        const std::uint32_t q = field_.q();
        for (std::uint32_t i = 0; i < n_; ++i) {
            out += ((a % q) * static_cast<std::uint64_t>(s) % q) * place;
            a /= q;
            place *= q;
        }
        return out;
    }

    // <a, b> = sum_i a_i b_i mod q; pairs a frequency with a point
    FqScalar dot(std::uint64_t a, std::uint64_t b) const {
        const std::uint32_t q = field_.q();
        std::uint64_t acc = 0;
        for (std::uint32_t i = 0; i < n_; ++i) {
            acc += (a % q) * (b % q) % q;
            a /= q;
            b /= q;
        }
        return static_cast<FqScalar>(acc % q);
    }

    std::vector<FqScalar> digits(std::uint64_t a) const {
        std::vector<FqScalar> d(n_);
        const std::uint32_t q = field_.q();
        for (std::uint32_t i = 0; i < n_; ++i) {
            d[i] = static_cast<FqScalar>(a % q);
            a /= q;
        }
        return d;
    }

    std::uint64_t from_digits(const std::vector<FqScalar>& d) const {
        std::uint64_t a = 0, place = 1;
        for (std::uint32_t i = 0; i < n_; ++i) {
            a += d[i] % field_.q() * place;
            place *= field_.q();
        }
        return a;
    }

    bool operator==(const Group& o) const { return field_ == o.field_ && n_ == o.n_; }
    bool operator!=(const Group& o) const { return !(*this == o); }

private:
    Fq field_;
    std::uint32_t n_;
    std::uint64_t size_;
};

}  // namespace normsys
