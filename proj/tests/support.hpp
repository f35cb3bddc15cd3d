#pragma once

// Shared helpers for the test suite.  The brute-force evaluators here are
// deliberately independent of the library's evaluation paths: they enumerate
// G^k and test L x = 0 row by row, so they validate the kernel walk and the
// spectral sum from outside.

#include <complex>
#include <vector>

#include "normsys/normsys.hpp"

namespace testsupport {

using namespace normsys;

// t_L by full enumeration of G^k with explicit row checks
inline cplx brute_t(const LinearSystem& L, const std::vector<FunctionOnG>& fs) {
    const Group& g = fs.front().g;
    const std::size_t k = L.k();
    std::uint64_t total = 1;
    for (std::size_t j = 0; j < k; ++j) total *= g.size();
    std::vector<std::uint64_t> x(k, 0);
    cplx acc = 0.0;
    std::uint64_t solutions = 0;
    for (std::uint64_t it = 0; it < total; ++it) {
        std::uint64_t rem = it;
        for (std::size_t j = 0; j < k; ++j) {
            x[j] = rem % g.size();
            rem /= g.size();
        }
        bool ok = true;
        for (std::size_t i = 0; i < L.m() && ok; ++i) {
            std::uint64_t s = 0;
            for (std::size_t j = 0; j < k; ++j)
                s = g.add(s, g.scalar_mul(L.matrix().at(i, j), x[j]));
            ok = s == 0;
        }
        if (!ok) continue;
        ++solutions;
        cplx prod = 1.0;
        for (std::size_t j = 0; j < k; ++j) prod *= fs[j][x[j]];
        acc += prod;
    }
    return acc / static_cast<double>(solutions);
}

inline cplx brute_t(const LinearSystem& L, const FunctionOnG& f) {
    return brute_t(L, std::vector<FunctionOnG>(L.k(), f));
}

// O(|G|^2) transform straight from the definition
inline SpectrumOnG naive_dft(const FunctionOnG& f) {
    const Group& g = f.g;
    SpectrumOnG s(g);
    for (std::uint64_t xi = 0; xi < g.size(); ++xi) {
        cplx acc = 0.0;
        for (std::uint64_t x = 0; x < g.size(); ++x)
            acc += f[x] * std::conj(unit_root(g.q(), g.dot(xi, x)));
        s[xi] = acc / static_cast<double>(g.size());
    }
    return s;
}

// pairwise convolution straight from the definition
inline FunctionOnG naive_convolve(const FunctionOnG& f, const FunctionOnG& h) {
    const Group& g = f.g;
    FunctionOnG out(g);
    for (std::uint64_t x = 0; x < g.size(); ++x) {
        cplx acc = 0.0;
        for (std::uint64_t y = 0; y < g.size(); ++y) acc += f[y] * h[g.sub(x, y)];
        out[x] = acc / static_cast<double>(g.size());
    }
    return out;
}

inline FunctionOnG from_values(const Group& g, std::vector<cplx> vals) {
    FunctionOnG f(g);
    f.v = std::move(vals);
    return f;
}

inline double cdist(cplx a, cplx b) { return std::abs(a - b); }

inline double table_dist(const FunctionOnG& a, const FunctionOnG& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.v.size(); ++i) m = std::max(m, std::abs(a.v[i] - b.v[i]));
    return m;
}

}  // namespace testsupport
