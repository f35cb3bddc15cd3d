#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "normsys/errors.hpp"
#include "normsys/fq_matrix.hpp"

namespace normsys {

// m independent linear equations in k variables over F_q.  m = 0 (no
// constraints, every assignment is a solution) is allowed; dependent rows are
// rejected so that m is always the rank and |solutions| = q^(k-m) holds on
// the nose.  The echelon form and a kernel basis are computed once and
// cached; both are deterministic functions of the row space.
class LinearSystem {
public:
    explicit LinearSystem(FqMatrix matrix)
        : mat_(std::move(matrix)), rref_(rref(mat_)), kernel_(kernel_basis(mat_)) {
        if (rref_.rows() != mat_.rows())
            throw ParseError("rows not independent (rank " + std::to_string(rref_.rows()) +
                             " < m = " + std::to_string(mat_.rows()) + ")");
    }

    const FqMatrix& matrix() const { return mat_; }
    const FqMatrix& echelon() const { return rref_; }     // rref of the rows
    const FqMatrix& kernel() const { return kernel_; }    // k x (k-m), L*K = 0
    const Fq& field() const { return mat_.field(); }
    std::uint32_t q() const { return mat_.q(); }
    std::size_t m() const { return mat_.rows(); }
    std::size_t k() const { return mat_.cols(); }

    bool translation_invariant() const {
        const Fq& F = field();
        for (std::size_t i = 0; i < m(); ++i) {
            FqScalar s = 0;
            for (std::size_t j = 0; j < k(); ++j) s = F.add(s, mat_.at(i, j));
            if (s != 0) return false;
        }
        return true;
    }

    bool operator==(const LinearSystem& o) const { return rref_ == o.rref_; }

private:
    FqMatrix mat_, rref_, kernel_;
};

inline LinearSystem parse_system(std::istream& in) { return LinearSystem(parse_matrix(in)); }
inline LinearSystem parse_system(const std::string& text) {
    return LinearSystem(parse_matrix(text));
}

// ---------------------------------------------------------------------------
// Row-space census

struct SchattenTest {
    bool is_schatten = false;
    bool degenerate = false;            // zero vector: vacuously balanced
    std::optional<FqScalar> witness_a;  // balancing value when is_schatten
};

// A vector is "balanced at a" when every entry lies in {0, a, -a} and the
// entries equal to a and to -a are equinumerous.  Over characteristic 2,
// a = -a, so the condition degenerates to: entries in {0, a} with an even
// count of a's.
inline SchattenTest is_schatten_vector(const Fq& F, const std::vector<FqScalar>& v) {
    SchattenTest out;
    bool all_zero = std::all_of(v.begin(), v.end(), [](FqScalar x) { return x == 0; });
    if (all_zero) {
        out.is_schatten = true;
        out.degenerate = true;
        return out;
    }
    for (FqScalar a = 1; a < F.q(); ++a) {
        FqScalar na = F.neg(a);
        std::size_t pos = 0, neg = 0;
        bool ok = true;
        for (FqScalar x : v) {
            if (x == 0) continue;
            if (x == a)
                ++pos;
            else if (x == na)
                ++neg;
            else {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        if (F.q() == 2 || a == na) {
            if (pos % 2 == 0) {
                out.is_schatten = true;
                out.witness_a = a;
                return out;
            }
        } else if (pos == neg) {
            out.is_schatten = true;
            out.witness_a = a;
            return out;
        }
    }
    return out;
}

struct RowSpaceProfile {
    std::size_t girth = 0;                       // 0 when the row space is {0}
    std::vector<std::vector<FqScalar>> mu;       // minimum-support vectors,
                                                 // first nonzero scaled to 1,
                                                 // sorted lexicographically
    std::size_t schatten_count = 0;              // balanced members of mu
};

// Full scan of the q^m row-space vectors.  girth = least support size of a
// nonzero vector; mu = the vectors attaining it, one representative per
// scalar class.  Guarded by `max_rowspace`.
inline RowSpaceProfile row_space_profile(const LinearSystem& L,
                                         std::uint64_t max_rowspace = Budgets{}.max_rowspace) {
    const Fq& F = L.field();
    const FqMatrix& R = L.echelon();
    std::size_t m = L.m(), k = L.k();
    RowSpaceProfile out;
    if (m == 0) return out;

    std::uint64_t total = 1;
    for (std::size_t i = 0; i < m; ++i) {
        if (total > max_rowspace / F.q())
            throw BudgetExceeded("row space size q^m exceeds budget");
        total *= F.q();
    }

    std::vector<FqScalar> c(m, 0), v(k, 0);
    std::size_t best = k + 1;
    std::set<std::vector<FqScalar>> mu;
    for (std::uint64_t it = 1; it < total; ++it) {
        // odometer over coefficient vectors, least significant digit first
        for (std::size_t d = 0;; ++d) {
            if (++c[d] < F.q()) break;
            c[d] = 0;
        }
        std::fill(v.begin(), v.end(), 0);
        for (std::size_t i = 0; i < m; ++i) {
            if (c[i] == 0) continue;
            for (std::size_t j = 0; j < k; ++j)
                v[j] = F.add(v[j], F.mul(c[i], R.at(i, j)));
        }
        std::size_t supp = 0;
        for (FqScalar x : v) supp += (x != 0);
        if (supp == 0 || supp > best) continue;
        if (supp < best) {
            best = supp;
            mu.clear();
        }
        // scale so the first nonzero entry is 1; dedupes the scalar class
        FqScalar lead = 0;
        for (FqScalar x : v)
            if (x != 0) {
                lead = x;
                break;
            }
        FqScalar s = F.inv(lead);
        std::vector<FqScalar> norm(k);
        for (std::size_t j = 0; j < k; ++j) norm[j] = F.mul(v[j], s);
        mu.insert(std::move(norm));
    }
    out.girth = best;
    out.mu.assign(mu.begin(), mu.end());  // set order is already lexicographic
    for (const auto& v2 : out.mu) out.schatten_count += is_schatten_vector(F, v2).is_schatten;
    return out;
}

}  // namespace normsys
