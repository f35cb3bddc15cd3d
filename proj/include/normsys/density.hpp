#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "normsys/errors.hpp"
#include "normsys/function_on_g.hpp"
#include "normsys/linear_system.hpp"

namespace normsys {

// Solution densities t_L(f_1, ..., f_k) = average of prod_j f_j(x_j) over all
// (x_1, ..., x_k) in G^k with sum_j L[i][j] x_j = 0 for every row i.  Two
// independent evaluation paths are provided: t_direct walks the solution set
// through a kernel basis; t_fourier sums spectra over the dual group.  They
// must agree to tolerance on every input -- that cross-check is the backbone
// of the test suite.

namespace detail {

inline void require_compatible(const LinearSystem& L, const std::vector<FunctionOnG>& fs) {
    if (fs.size() != L.k())
        throw DimensionMismatch("need exactly k = " + std::to_string(L.k()) + " functions");
    for (const auto& f : fs) {
        if (f.g != fs.front().g) throw DimensionMismatch("functions live on different groups");
        if (f.g.q() != L.q()) throw DimensionMismatch("function modulus differs from system's");
    }
}

inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap,
                                 const char* what) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (r > cap / base) throw BudgetExceeded(what);
        r *= base;
    }
    return r;
}

}  // namespace detail

// Walks Sol(L) = {K v : v in G^(k-m)} where K is the cached kernel basis of
// L, enumerating coefficient tuples v in ascending radix order (coordinate 1
// least significant).  Cost: q^{n(k-m)} tuples.
inline cplx t_direct(const LinearSystem& L, const std::vector<FunctionOnG>& fs,
                     const Budgets& budgets = Budgets{}) {
    detail::require_compatible(L, fs);
    const Group& g = fs.front().g;
    const std::size_t k = L.k(), m = L.m(), free = k - m;
    const FqMatrix& K = L.kernel();

    if (m == 0) {  // no constraints: the average factors into plain means
        cplx prod = 1.0;
        for (const auto& f : fs) prod *= mean(f);
        return prod;
    }

    std::uint64_t count =
        detail::checked_pow(g.size(), free, budgets.max_enum, "solution enumeration exceeds budget");

    // column c of K scaled by every field element, lifted to index arithmetic:
    // when v_c changes, each x_j moves by K[j][c] * (delta of v_c)
    std::vector<std::uint64_t> x(k, 0), v(free, 0);
    cplx acc = 0.0;
    for (std::uint64_t it = 0;; ++it) {
        cplx prod = 1.0;
        for (std::size_t j = 0; j < k; ++j) prod *= fs[j][x[j]];
        acc += prod;
        if (it + 1 == count) break;
        // odometer step on v, with incremental update of x = K v
        for (std::size_t c = 0;; ++c) {
            std::uint64_t old = v[c];
            std::uint64_t next = old + 1 == g.size() ? 0 : old + 1;
            v[c] = next;
            std::uint64_t delta = g.sub(next, old);
            for (std::size_t j = 0; j < k; ++j)
                if (K.at(j, c) != 0) x[j] = g.add(x[j], g.scalar_mul(K.at(j, c), delta));
            if (next != 0) break;
        }
    }
    return acc / static_cast<double>(count);
}

// Dual-side evaluation: sum over xi in Ghat^m of prod_j fhat_j(sum_i L[i][j] xi_i).
// Cost: q^{nm} tuples plus k transforms.
inline cplx t_fourier(const LinearSystem& L, const std::vector<FunctionOnG>& fs,
                      const Budgets& budgets = Budgets{}) {
    detail::require_compatible(L, fs);
    const Group& g = fs.front().g;
    const std::size_t k = L.k(), m = L.m();
    const FqMatrix& A = L.matrix();

    std::uint64_t count =
        detail::checked_pow(g.size(), m, budgets.max_enum, "frequency enumeration exceeds budget");

    std::vector<SpectrumOnG> hats;
    hats.reserve(k);
    for (const auto& f : fs) hats.push_back(fourier(f));

    std::vector<std::uint64_t> xi(m, 0), eta(k, 0);
    cplx acc = 0.0;
    for (std::uint64_t it = 0;; ++it) {
        cplx prod = 1.0;
        for (std::size_t j = 0; j < k; ++j) prod *= hats[j][eta[j]];
        acc += prod;
        if (it + 1 == count) break;
        for (std::size_t i = 0;; ++i) {
            std::uint64_t old = xi[i];
            std::uint64_t next = old + 1 == g.size() ? 0 : old + 1;
            xi[i] = next;
            std::uint64_t delta = g.sub(next, old);
            for (std::size_t j = 0; j < k; ++j)
                if (A.at(i, j) != 0) eta[j] = g.add(eta[j], g.scalar_mul(A.at(i, j), delta));
            if (next != 0) break;
        }
    }
    return acc;
}

// Picks the cheaper of the two oracles.
inline cplx t_density(const LinearSystem& L, const std::vector<FunctionOnG>& fs,
                      const Budgets& budgets = Budgets{}) {
    return L.m() <= L.k() - L.m() ? t_fourier(L, fs, budgets) : t_direct(L, fs, budgets);
}

inline cplx t_density(const LinearSystem& L, const FunctionOnG& f,
                      const Budgets& budgets = Budgets{}) {
    return t_density(L, std::vector<FunctionOnG>(L.k(), f), budgets);
}

// |t_L(f, ..., f)|^(1/k)
inline double norm_L(const LinearSystem& L, const FunctionOnG& f,
                     const Budgets& budgets = Budgets{}) {
    cplx t = t_density(L, f, budgets);
    return std::pow(std::abs(t), 1.0 / static_cast<double>(L.k()));
}

// t_L(|f|, ..., |f|)^(1/k); the integrand is non-negative, so tiny negative
// round-off is clamped before taking the root
inline double weak_norm_L(const LinearSystem& L, const FunctionOnG& f,
                          const Budgets& budgets = Budgets{}) {
    cplx t = t_density(L, abs_value(f), budgets);
    double re = std::max(0.0, t.real());
    return std::pow(re, 1.0 / static_cast<double>(L.k()));
}

// (sum_xi |fhat(xi)|^4)^(1/4)
inline double u2_norm(const FunctionOnG& f) {
    return std::pow(spectrum_power_sum(fourier(f), 4.0), 0.25);
}

// f tensor g on F_q^(n1+n2); the first n1 coordinates index f's argument
inline FunctionOnG tensor(const FunctionOnG& f, const FunctionOnG& g,
                          std::uint64_t max_table = Budgets{}.max_table) {
    if (f.g.q() != g.g.q()) throw DimensionMismatch("tensor factors over different fields");
    Group prod(f.g.q(), f.g.n() + g.g.n(), max_table);
    FunctionOnG out(prod);
    for (std::uint64_t z = 0; z < g.g.size(); ++z)
        for (std::uint64_t y = 0; y < f.g.size(); ++y) out[y + f.g.size() * z] = f[y] * g[z];
    return out;
}

// k-fold convolution via the spectral side: transform, multiply, invert.
// (f1 * f2)(x) = E_{y1 + y2 = x} f1(y1) f2(y2), and so on for higher k.
inline FunctionOnG convolve(const std::vector<FunctionOnG>& fs) {
    if (fs.empty()) throw DimensionMismatch("convolve needs at least one function");
    for (const auto& f : fs)
        if (f.g != fs.front().g) throw DimensionMismatch("convolution factors on different groups");
    SpectrumOnG prod = fourier(fs.front());
    for (std::size_t i = 1; i < fs.size(); ++i) {
        SpectrumOnG h = fourier(fs[i]);
        for (std::size_t j = 0; j < prod.c.size(); ++j) prod.c[j] *= h.c[j];
    }
    return inverse_fourier(prod);
}

// Average of t over all assignments of the k functions to the k slots.
inline cplx symmetrised_density(const LinearSystem& L, const std::vector<FunctionOnG>& fs,
                                const Budgets& budgets = Budgets{}) {
    detail::require_compatible(L, fs);
    if (L.k() > 8) throw BudgetExceeded("symmetrised density limited to k <= 8");
    std::vector<std::size_t> perm(L.k());
    for (std::size_t i = 0; i < L.k(); ++i) perm[i] = i;
    cplx acc = 0.0;
    std::uint64_t count = 0;
    do {
        std::vector<FunctionOnG> arranged;
        arranged.reserve(L.k());
        for (std::size_t i = 0; i < L.k(); ++i) arranged.push_back(fs[perm[i]]);
        acc += t_fourier(L, arranged, budgets);
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc / static_cast<double>(count);
}

// Density with per-slot conjugation: slots with alpha[j] = 1 take f_j, slots
// with alpha[j] = 0 take conj(f_j).  Direct enumeration over Sol(L).
inline cplx t_conjugated(const LinearSystem& L, const std::vector<int>& alpha,
                         const std::vector<FunctionOnG>& fs, const Budgets& budgets = Budgets{}) {
    detail::require_compatible(L, fs);
    if (alpha.size() != L.k()) throw DimensionMismatch("alpha must have one bit per variable");
    std::vector<FunctionOnG> adjusted = fs;
    for (std::size_t j = 0; j < fs.size(); ++j)
        if (!alpha[j])
            for (auto& x : adjusted[j].v) x = std::conj(x);
    return t_direct(L, adjusted, budgets);
}

// max over all 2^k conjugation patterns of |t|
inline double s_density(const LinearSystem& L, const std::vector<FunctionOnG>& fs,
                        const Budgets& budgets = Budgets{}) {
    if (L.k() > 12) throw BudgetExceeded("conjugation sweep limited to k <= 12");
    double best = 0.0;
    for (std::uint32_t bits = 0; bits < (1u << L.k()); ++bits) {
        std::vector<int> alpha(L.k());
        for (std::size_t j = 0; j < L.k(); ++j) alpha[j] = (bits >> j) & 1;
        best = std::max(best, std::abs(t_conjugated(L, alpha, fs, budgets)));
    }
    return best;
}

}  // namespace normsys
