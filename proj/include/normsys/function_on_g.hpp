#pragma once

#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "normsys/errors.hpp"
#include "normsys/group.hpp"
#include "normsys/rng.hpp"

namespace normsys {

using cplx = std::complex<double>;

// Dense table of a complex function on G = F_q^n, addressed by group index.
// SpectrumOnG holds Fourier coefficients over the dual group (same index
// scheme); the two are distinct types so point side and frequency side can't
// be mixed up silently.
struct FunctionOnG {
    Group g;
    std::vector<cplx> v;

    explicit FunctionOnG(const Group& grp, cplx fill = 0.0)
        : g(grp), v(static_cast<std::size_t>(grp.size()), fill) {}

    cplx& operator[](std::uint64_t x) { return v[static_cast<std::size_t>(x)]; }
    cplx operator[](std::uint64_t x) const { return v[static_cast<std::size_t>(x)]; }
};

struct SpectrumOnG {
    Group g;
    std::vector<cplx> c;

    explicit SpectrumOnG(const Group& grp, cplx fill = 0.0)
        : g(grp), c(static_cast<std::size_t>(grp.size()), fill) {}

    cplx& operator[](std::uint64_t xi) { return c[static_cast<std::size_t>(xi)]; }
    cplx operator[](std::uint64_t xi) const { return c[static_cast<std::size_t>(xi)]; }
};

// e(r) = exp(2 pi i r / q), the additive character of F_q
inline cplx unit_root(std::uint32_t q, std::uint64_t r) {
    double ang = 2.0 * std::numbers::pi * static_cast<double>(r % q) / static_cast<double>(q);
    return {std::cos(ang), std::sin(ang)};
}

inline cplx mean(const FunctionOnG& f) {
    cplx s = 0.0;
    for (cplx x : f.v) s += x;
    return s / static_cast<double>(f.g.size());
}

inline double max_imag(const FunctionOnG& f) {
    double m = 0.0;
    for (cplx x : f.v) m = std::max(m, std::abs(x.imag()));
    return m;
}

inline bool is_real(const FunctionOnG& f, double tol = 1e-12) { return max_imag(f) <= tol; }

inline FunctionOnG abs_value(const FunctionOnG& f) {
    FunctionOnG out(f.g);
    for (std::size_t i = 0; i < f.v.size(); ++i) out.v[i] = std::abs(f.v[i]);
    return out;
}

inline FunctionOnG shift(const FunctionOnG& f, std::uint64_t t) {
    FunctionOnG out(f.g);
    for (std::uint64_t x = 0; x < f.g.size(); ++x) out[x] = f[f.g.add(x, t)];
    return out;
}

inline FunctionOnG constant(const Group& g, cplx value) { return FunctionOnG(g, value); }

inline FunctionOnG point_mass(const Group& g, std::uint64_t x0, cplx value = 1.0) {
    FunctionOnG f(g);
    f[x0] = value;
    return f;
}

// x -> e(<gamma, x>)
inline FunctionOnG character(const Group& g, std::uint64_t gamma) {
    FunctionOnG f(g);
    for (std::uint64_t x = 0; x < g.size(); ++x) f[x] = unit_root(g.q(), g.dot(gamma, x));
    return f;
}

// indicator of the subgroup {x : x_n = 0}; with little-endian indexing these
// are exactly the first q^(n-1) indices
inline FunctionOnG hyperplane_indicator(const Group& g) {
    FunctionOnG f(g);
    std::uint64_t cut = g.size() / g.q();
    for (std::uint64_t x = 0; x < cut; ++x) f[x] = 1.0;
    return f;
}

inline FunctionOnG random_real(const Group& g, Rng& rng, double lo = -1.0, double hi = 1.0) {
    FunctionOnG f(g);
    for (auto& x : f.v) x = rng.uniform(lo, hi);
    return f;
}

inline FunctionOnG random_complex(const Group& g, Rng& rng) {
    FunctionOnG f(g);
    for (auto& x : f.v) x = rng.complex_in_disc();
    return f;
}

// ---------------------------------------------------------------------------
// Transforms.  fourier(f)(xi) = E_x f(x) e(-<xi,x>); inverse(s)(x) =
// sum_xi s(xi) e(<xi,x>).  Computed axis by axis (n passes of a q-point DFT),
// O(n q^{n+1}) total.

namespace detail {

inline void dft_axes(std::vector<cplx>& a, std::uint32_t q, std::uint32_t n, int sign) {
    std::vector<cplx> root(q);
    for (std::uint32_t r = 0; r < q; ++r)
        root[r] = unit_root(q, r);  // sign applied via index direction below
    std::vector<cplx> tmp(q);
    std::uint64_t stride = 1;
    for (std::uint32_t axis = 0; axis < n; ++axis) {
        std::uint64_t block = stride * q;
        for (std::uint64_t base = 0; base < a.size(); base += block) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                for (std::uint32_t t = 0; t < q; ++t) {
                    cplx s = 0.0;
                    for (std::uint32_t x = 0; x < q; ++x) {
                        std::uint64_t e = static_cast<std::uint64_t>(t) * x % q;
                        std::uint32_t idx = sign < 0 ? (e ? q - static_cast<std::uint32_t>(e) : 0)
                                                     : static_cast<std::uint32_t>(e);
                        s += a[base + off + x * stride] * root[idx];
                    }
                    tmp[t] = s;
                }
                for (std::uint32_t t = 0; t < q; ++t) a[base + off + t * stride] = tmp[t];
            }
        }
        stride = block;
    }
}

}  // namespace detail

inline SpectrumOnG fourier(const FunctionOnG& f) {
    SpectrumOnG s(f.g);
    s.c = f.v;
    detail::dft_axes(s.c, f.g.q(), f.g.n(), -1);
    double scale = 1.0 / static_cast<double>(f.g.size());
    for (auto& x : s.c) x *= scale;
    return s;
}

inline FunctionOnG inverse_fourier(const SpectrumOnG& s) {
    FunctionOnG f(s.g);
    f.v = s.c;
    detail::dft_axes(f.v, s.g.q(), s.g.n(), +1);
    return f;
}

// sum_xi |s(xi)|^p
inline double spectrum_power_sum(const SpectrumOnG& s, double p) {
    double acc = 0.0;
    for (cplx x : s.c) acc += std::pow(std::abs(x), p);
    return acc;
}

// ---------------------------------------------------------------------------
// Text format.  Line 1: "q n"; then q^n data lines, one per group index in
// ascending order, holding either "re im" or a single real value.  '#' lines
// and blank lines are skipped.  Values are written with enough digits to
// round-trip exactly.

namespace detail {

inline bool fn_data_line(const std::string& s) {
    for (char ch : s)
        if (!isspace(static_cast<unsigned char>(ch))) return ch != '#';
    return false;
}

}  // namespace detail

inline FunctionOnG parse_function(std::istream& in,
                                  std::uint64_t max_table = Budgets{}.max_table) {
    std::string line;
    std::size_t line_no = 0;
    auto next_data = [&]() -> std::string {
        while (std::getline(in, line)) {
            ++line_no;
            if (detail::fn_data_line(line)) return line;
        }
        throw ParseError("unexpected end of function file", line_no);
    };
    std::istringstream hs(next_data());
    long long q = -1, n = -1;
    if (!(hs >> q >> n) || q < 2 || n < 1) throw ParseError("header must be 'q n'", line_no);
    Group g(static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(n), max_table);
    FunctionOnG f(g);
    for (std::uint64_t x = 0; x < g.size(); ++x) {
        std::istringstream vs(next_data());
        double re = 0.0, im = 0.0;
        if (!(vs >> re)) throw ParseError("expected a numeric value", line_no);
        if (!(vs >> im)) im = 0.0;
        std::string junk;
        vs.clear();
        if (vs >> junk) throw ParseError("unexpected token '" + junk + "'", line_no);
        f[x] = {re, im};
    }
    return f;
}

inline FunctionOnG parse_function_text(const std::string& text,
                                       std::uint64_t max_table = Budgets{}.max_table) {
    std::istringstream is(text);
    return parse_function(is, max_table);
}

inline void serialize_function(const FunctionOnG& f, std::ostream& out) {
    out << f.g.q() << ' ' << f.g.n() << '\n';
    char buf[64];
    for (cplx x : f.v) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g", x.real(), x.imag());
        out << buf << '\n';
    }
}

inline std::string serialize_function(const FunctionOnG& f) {
    std::ostringstream os;
    serialize_function(f, os);
    return os.str();
}

}  // namespace normsys
