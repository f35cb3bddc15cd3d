#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "normsys/errors.hpp"
#include "normsys/linear_system.hpp"
#include "normsys/rng.hpp"

namespace normsys {

// r-fold subdivision: every column v of L becomes r copies of v followed by
// r copies of -v, so an m x k system turns into an m x 2rk one.  Solutions of
// the new system are exactly the tuples whose alternating block sums solve L.
inline LinearSystem subdivide(const LinearSystem& L, std::size_t r) {
    if (r == 0) throw DimensionMismatch("subdivision order must be >= 1");
    const Fq& F = L.field();
    FqMatrix out(F, L.m(), 2 * r * L.k());
    for (std::size_t j = 0; j < L.k(); ++j)
        for (std::size_t i = 0; i < L.m(); ++i) {
            FqScalar v = L.matrix().at(i, j);
            for (std::size_t c = 0; c < r; ++c) {
                out.at(i, 2 * r * j + c) = v;
                out.at(i, 2 * r * j + r + c) = F.neg(v);
            }
        }
    return LinearSystem(out);
}

namespace detail {

// Basis (in echelon form) of {v in rowspace(L) : v_j = 0 for all j outside
// `keep`}, restricted to the kept coordinates in ascending order.
inline FqMatrix rowspace_confined_to(const LinearSystem& L, const std::vector<bool>& keep) {
    const Fq& F = L.field();
    std::vector<std::size_t> kept, dropped;
    for (std::size_t j = 0; j < L.k(); ++j) (keep[j] ? kept : dropped).push_back(j);
    // coefficient vectors c with c^T * R zero on the dropped columns
    const FqMatrix& R = L.echelon();
    FqMatrix outside = R.select_cols(dropped);                 // m x |dropped|
    FqMatrix C = kernel_basis(outside.transpose());            // m x dim
    FqMatrix rows(F, C.cols(), kept.size());
    for (std::size_t b = 0; b < C.cols(); ++b)
        for (std::size_t jj = 0; jj < kept.size(); ++jj) {
            FqScalar s = 0;
            for (std::size_t i = 0; i < L.m(); ++i)
                s = F.add(s, F.mul(C.at(i, b), R.at(i, kept[jj])));
            rows.at(b, jj) = s;
        }
    return rref(rows);
}

}  // namespace detail

// Projection of the solution set onto the coordinates other than `var`
// (0-based).  The result is the system whose row space is {v in rowspace(L) :
// v_var = 0} with that coordinate removed; its rank drops by one exactly when
// column `var` of L is nonzero.
inline LinearSystem delete_variable(const LinearSystem& L, std::size_t var) {
    if (var >= L.k()) throw DimensionMismatch("variable index out of range");
    if (L.k() < 2) throw DimensionMismatch("cannot delete the only variable");
    std::vector<bool> keep(L.k(), true);
    keep[var] = false;
    return LinearSystem(detail::rowspace_confined_to(L, keep));
}

// Iterated deletion of everything outside `vars` (0-based, need not be
// sorted; duplicates rejected).
inline LinearSystem induced_subsystem(const LinearSystem& L, std::vector<std::size_t> vars) {
    std::sort(vars.begin(), vars.end());
    if (std::adjacent_find(vars.begin(), vars.end()) != vars.end())
        throw DimensionMismatch("duplicate variable index");
    if (vars.empty() || vars.back() >= L.k()) throw DimensionMismatch("variable index out of range");
    std::vector<bool> keep(L.k(), false);
    for (std::size_t j : vars) keep[j] = true;
    return LinearSystem(detail::rowspace_confined_to(L, keep));
}

// ---------------------------------------------------------------------------
// Canonical form under isomorphism (row operations + column permutation).
//
// The canonical form is the lexicographically least echelon form over all
// column orders, compared column-major with rows padded to m.  The search
// fills positions left to right, and after each level keeps only the states
// whose prefix attains the global minimum: a column-major comparison makes
// every completion of a strictly larger prefix larger, so this pruning is
// exact.  States that agree on the multiset of unused column vectors are
// interchangeable and get merged.  Aborts via BudgetExceeded once more than
// `max_perm_nodes` states have been expanded.

struct CanonicalForm {
    FqMatrix matrix;                      // echelon form of the best order
    std::vector<std::size_t> permutation; // position -> original column
};

namespace detail {

// first `cols` columns of the padded echelon prefix, column-major
inline std::vector<FqScalar> prefix_key(const FqMatrix& chosen, std::size_t m) {
    FqMatrix R = rref(chosen);
    std::vector<FqScalar> key(m * chosen.cols(), 0);
    for (std::size_t j = 0; j < chosen.cols(); ++j)
        for (std::size_t i = 0; i < R.rows(); ++i) key[j * m + i] = R.at(i, j);
    return key;
}

}  // namespace detail

inline CanonicalForm canonical_form(const LinearSystem& L,
                                    std::uint64_t max_perm_nodes = Budgets{}.max_perm_nodes) {
    const std::size_t m = L.m(), k = L.k();
    if (k > 12) throw BudgetExceeded("canonical form limited to k <= 12 columns");
    const FqMatrix& A = L.echelon();
    if (m == 0) {
        std::vector<std::size_t> id(k);
        std::iota(id.begin(), id.end(), 0);
        return {FqMatrix(L.field(), 0, k), id};
    }

    struct State {
        std::vector<std::size_t> order;  // chosen original columns so far
        std::vector<bool> used;
    };
    std::vector<State> level{State{{}, std::vector<bool>(k, false)}};
    std::uint64_t nodes = 0;

    // Two states are interchangeable only when the chosen columns carry the
    // same values in the same positions and the leftover columns form the
    // same multiset; equal prefix rrefs are not enough, because the reduction
    // that continues the search depends on the raw prefix values.
    using StateSig = std::pair<std::vector<std::vector<FqScalar>>, std::vector<std::vector<FqScalar>>>;

    for (std::size_t pos = 0; pos < k; ++pos) {
        std::vector<FqScalar> best_key;
        std::vector<State> next;
        std::set<StateSig> seen;
        for (const State& st : level) {
            for (std::size_t cand = 0; cand < k; ++cand) {
                if (st.used[cand]) continue;
                if (++nodes > max_perm_nodes)
                    throw BudgetExceeded("canonical form search exceeded node budget");
                std::vector<std::size_t> order = st.order;
                order.push_back(cand);
                std::vector<FqScalar> key = detail::prefix_key(A.select_cols(order), m);
                if (!best_key.empty() && key > best_key) continue;
                if (best_key.empty() || key < best_key) {
                    best_key = key;
                    next.clear();
                    seen.clear();
                }
                State ns{std::move(order), st.used};
                ns.used[cand] = true;
                StateSig sig;
                for (std::size_t j : ns.order) sig.first.push_back(A.col(j));
                for (std::size_t j = 0; j < k; ++j)
                    if (!ns.used[j]) sig.second.push_back(A.col(j));
                std::sort(sig.second.begin(), sig.second.end());
                if (seen.insert(std::move(sig)).second) next.push_back(std::move(ns));
            }
        }
        level = std::move(next);
    }

    FqMatrix best = rref(A.select_cols(level.front().order));
    return {best, level.front().order};
}

inline bool isomorphic(const LinearSystem& L, const LinearSystem& M,
                       std::uint64_t max_perm_nodes = Budgets{}.max_perm_nodes) {
    if (L.q() != M.q() || L.m() != M.m() || L.k() != M.k()) return false;
    return canonical_form(L, max_perm_nodes).matrix == canonical_form(M, max_perm_nodes).matrix;
}

// ---------------------------------------------------------------------------
// Components: the finest partition of the variables such that the solution
// set splits as a direct product across the parts.

struct ComponentSplit {
    std::vector<std::vector<std::size_t>> parts;  // ascending inside and across
    std::vector<LinearSystem> systems;            // induced subsystem per part
};

// Minimal supports of nonzero row-space vectors are each contained in one
// part; overlapping supports force coordinates together, and any two
// coordinates of an indecomposable block share such a support, so a
// union-find closure over the minimal supports is exactly the split.
// Coordinates on no support (zero columns) become singleton parts.
inline ComponentSplit components(const LinearSystem& L,
                                 std::uint64_t max_rowspace = Budgets{}.max_rowspace) {
    const Fq& F = L.field();
    const FqMatrix& R = L.echelon();
    const std::size_t m = L.m(), k = L.k();
    if (k > 64) throw BudgetExceeded("component split limited to k <= 64");

    std::uint64_t total = 1;
    for (std::size_t i = 0; i < m; ++i) {
        if (total > max_rowspace / F.q()) throw BudgetExceeded("row space size exceeds budget");
        total *= F.q();
    }

    // collect distinct supports as bitmasks
    std::set<std::uint64_t> supports;
    std::vector<FqScalar> c(m, 0);
    std::vector<FqScalar> v(k, 0);
    for (std::uint64_t it = 1; it < total; ++it) {
        for (std::size_t d = 0;; ++d) {
            if (++c[d] < F.q()) break;
            c[d] = 0;
        }
        std::fill(v.begin(), v.end(), 0);
        for (std::size_t i = 0; i < m; ++i) {
            if (c[i] == 0) continue;
            for (std::size_t j = 0; j < k; ++j) v[j] = F.add(v[j], F.mul(c[i], R.at(i, j)));
        }
        std::uint64_t mask = 0;
        for (std::size_t j = 0; j < k; ++j)
            if (v[j] != 0) mask |= 1ull << j;
        supports.insert(mask);
    }

    // ascending popcount: a support is minimal iff it contains no previously
    // accepted minimal support
    std::vector<std::uint64_t> by_size(supports.begin(), supports.end());
    std::sort(by_size.begin(), by_size.end(), [](std::uint64_t a, std::uint64_t b) {
        auto pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
        return pa != pb ? pa < pb : a < b;
    });
    std::vector<std::uint64_t> minimal;
    for (std::uint64_t s : by_size) {
        bool is_min = true;
        for (std::uint64_t t : minimal)
            if ((t & s) == t) {
                is_min = false;
                break;
            }
        if (is_min) minimal.push_back(s);
    }

    std::vector<std::size_t> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::uint64_t s : minimal) {
        std::size_t first = k;
        for (std::size_t j = 0; j < k; ++j) {
            if (!((s >> j) & 1)) continue;
            if (first == k)
                first = j;
            else
                parent[find(j)] = find(first);
        }
    }

    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t j = 0; j < k; ++j) groups[find(j)].push_back(j);
    ComponentSplit out;
    for (auto& [root, part] : groups) out.parts.push_back(part);
    std::sort(out.parts.begin(), out.parts.end());
    for (const auto& part : out.parts) out.systems.push_back(induced_subsystem(L, part));
    return out;
}

// ---------------------------------------------------------------------------

// |im(L^T) meet im(M^T)|^n: the row spaces intersect in a subspace of F_q^k
// whose dimension d follows from rank(L stacked on M); the count over
// G = F_q^n is q^(n d).
inline std::uint64_t image_intersection_count(const LinearSystem& L, const LinearSystem& M,
                                              std::uint32_t n) {
    if (L.q() != M.q() || L.k() != M.k() || L.m() != M.m())
        throw DimensionMismatch("image intersection needs two m x k systems over one field");
    std::size_t joint = rank(L.matrix().vstack(M.matrix()));
    std::size_t d = L.m() + M.m() - joint;
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < static_cast<std::size_t>(n) * d; ++i) {
        if (out > UINT64_MAX / L.q()) throw BudgetExceeded("intersection count overflows");
        out *= L.q();
    }
    return out;
}

// Random isomorphic copy: invertible row operations followed by a column
// shuffle.  Used to exercise isomorphism-invariance.
inline LinearSystem scramble(const LinearSystem& L, Rng& rng, std::size_t ops = 24) {
    const Fq& F = L.field();
    FqMatrix A = L.matrix();
    const std::size_t m = L.m(), k = L.k();
    for (std::size_t step = 0; m > 1 && step < ops; ++step) {
        std::size_t i = rng.below(m), j = rng.below(m);
        if (i == j) {
            FqScalar s = 1 + static_cast<FqScalar>(rng.below(F.q() - 1));
            for (std::size_t col = 0; col < k; ++col) A.at(i, col) = F.mul(A.at(i, col), s);
        } else {
            FqScalar s = static_cast<FqScalar>(rng.below(F.q()));
            for (std::size_t col = 0; col < k; ++col)
                A.at(i, col) = F.add(A.at(i, col), F.mul(s, A.at(j, col)));
        }
    }
    if (m == 1) {
        FqScalar s = 1 + static_cast<FqScalar>(rng.below(F.q() - 1));
        for (std::size_t col = 0; col < k; ++col) A.at(0, col) = F.mul(A.at(0, col), s);
    }
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t j = k; j > 1; --j) std::swap(perm[j - 1], perm[rng.below(j)]);
    return LinearSystem(A.select_cols(perm));
}

}  // namespace normsys
