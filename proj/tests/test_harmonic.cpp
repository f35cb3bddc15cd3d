#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace normsys;
using namespace testsupport;
using Catch::Matchers::WithinAbs;

TEST_CASE("group index arithmetic matches digit arithmetic", "[group]") {
    for (auto [q, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
             {2, 3}, {3, 2}, {5, 2}, {7, 1}}) {
        Group g(q, n);
        REQUIRE(g.size() == static_cast<std::uint64_t>(std::pow(q, n)));
        Rng rng(q * 100 + n);
        for (int t = 0; t < 50; ++t) {
            std::uint64_t a = rng.below(g.size()), b = rng.below(g.size());
            REQUIRE(g.add(a, b) == g.add(b, a));
            REQUIRE(g.sub(g.add(a, b), b) == a);
            REQUIRE(g.add(a, g.neg(a)) == 0);
            REQUIRE(g.from_digits(g.digits(a)) == a);
            REQUIRE(g.scalar_mul(1, a) == a);
            REQUIRE(g.scalar_mul(0, a) == 0);
            // dot is bilinear in the first slot
            std::uint64_t c = rng.below(g.size());
            Fq F = g.field();
            REQUIRE(g.dot(g.add(a, b), c) == F.add(g.dot(a, c), g.dot(b, c)));
        }
    }
    REQUIRE_THROWS_AS(Group(2, 0), DimensionMismatch);
    REQUIRE_THROWS_AS(Group(2, 30, 1 << 20), BudgetExceeded);
}

TEST_CASE("fourier agrees with the quadratic-time character sum", "[harmonic]") {
    Rng rng(101);
    for (auto [q, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
             {2, 3}, {3, 2}, {5, 1}, {5, 2}, {7, 1}}) {
        Group g(q, n);
        FunctionOnG f = random_complex(g, rng);
        SpectrumOnG fast = fourier(f);
        SpectrumOnG slow = naive_dft(f);
        for (std::uint64_t xi = 0; xi < g.size(); ++xi)
            REQUIRE_THAT(cdist(fast[xi], slow[xi]), WithinAbs(0.0, 1e-12));
        FunctionOnG back = inverse_fourier(fast);
        REQUIRE_THAT(table_dist(back, f), WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("Parseval and conjugate symmetry", "[harmonic]") {
    Rng rng(102);
    Group g(3, 2);
    FunctionOnG f = random_complex(g, rng);
    double lhs = spectrum_power_sum(fourier(f), 2.0);
    double rhs = 0.0;
    for (cplx x : f.v) rhs += std::norm(x);
    rhs /= static_cast<double>(g.size());
    REQUIRE_THAT(lhs, WithinAbs(rhs, 1e-12));

    FunctionOnG fr = random_real(g, rng);
    SpectrumOnG s = fourier(fr);
    for (std::uint64_t xi = 0; xi < g.size(); ++xi)
        REQUIRE_THAT(cdist(s[g.neg(xi)], std::conj(s[xi])), WithinAbs(0.0, 1e-12));
}

TEST_CASE("characters transform to point masses", "[harmonic]") {
    Group g(5, 2);
    for (std::uint64_t gamma : {0ull, 3ull, 17ull}) {
        FunctionOnG chi = character(g, gamma);
        SpectrumOnG s = fourier(chi);
        for (std::uint64_t xi = 0; xi < g.size(); ++xi)
            REQUIRE_THAT(std::abs(s[xi] - (xi == gamma ? 1.0 : 0.0)), WithinAbs(0.0, 1e-12));
        REQUIRE_THAT(u2_norm(chi), WithinAbs(1.0, 1e-12));
        if (gamma != 0) REQUIRE_THAT(std::abs(mean(chi)), WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("frozen hyperplane densities", "[harmonic][frozen]") {
    // single alternating relation, q = 2, n = 3: t = 1/8
    LinearSystem L = u2_system(2);
    Group g(2, 3);
    FunctionOnG f = hyperplane_indicator(g);
    REQUIRE_THAT(std::abs(t_direct(L, {f, f, f, f}) - 0.125), WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(std::abs(t_fourier(L, {f, f, f, f}) - 0.125), WithinAbs(0.0, 1e-15));

    // two four-term relations, q = 3, n = 2: t = 3^-4
    LinearSystem K = k23_system(3);
    Group g3(3, 2);
    FunctionOnG h = hyperplane_indicator(g3);
    std::vector<FunctionOnG> hs(6, h);
    double expect = std::pow(3.0, -4.0);
    REQUIRE_THAT(std::abs(t_direct(K, hs) - expect), WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(std::abs(t_fourier(K, hs) - expect), WithinAbs(0.0, 1e-15));
}

TEST_CASE("both evaluation paths match full enumeration", "[harmonic][oracle]") {
    Rng rng(103);
    std::vector<LinearSystem> systems = {
        u2_system(3),
        k23_system(3),
        chain_system(5, 3),
        parse_system("2 1 3\n1 1 1\n"),
        parse_system("5 1 4\n1 2 -1 -2\n"),
        parse_system("3 2 4\n1 0 2 1\n0 1 1 1\n"),
    };
    for (const auto& L : systems) {
        Group g(L.q(), 1);
        std::vector<FunctionOnG> fs;
        for (std::size_t j = 0; j < L.k(); ++j) fs.push_back(random_complex(g, rng));
        cplx want = brute_t(L, fs);
        REQUIRE_THAT(cdist(t_direct(L, fs), want), WithinAbs(0.0, 1e-12));
        REQUIRE_THAT(cdist(t_fourier(L, fs), want), WithinAbs(0.0, 1e-12));
        REQUIRE_THAT(cdist(t_density(L, fs), want), WithinAbs(0.0, 1e-12));
    }
    // and on a two-dimensional group for the cheap ones
    for (const auto& L : {u2_system(3), parse_system("2 1 3\n1 1 1\n")}) {
        Group g(L.q(), 2);
        std::vector<FunctionOnG> fs;
        for (std::size_t j = 0; j < L.k(); ++j) fs.push_back(random_complex(g, rng));
        cplx want = brute_t(L, fs);
        REQUIRE_THAT(cdist(t_direct(L, fs), want), WithinAbs(0.0, 1e-12));
        REQUIRE_THAT(cdist(t_fourier(L, fs), want), WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("unconstrained systems average to a product of means", "[harmonic]") {
    Rng rng(104);
    Group g(3, 2);
    LinearSystem Z{FqMatrix(Fq(3), 0, 3)};
    std::vector<FunctionOnG> fs = {random_complex(g, rng), random_complex(g, rng),
                                   random_complex(g, rng)};
    cplx want = mean(fs[0]) * mean(fs[1]) * mean(fs[2]);
    REQUIRE_THAT(cdist(t_direct(Z, fs), want), WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(cdist(t_fourier(Z, fs), want), WithinAbs(0.0, 1e-12));
}

TEST_CASE("subdivided identity systems compute spectral power sums", "[harmonic][frozen]") {
    Rng rng(105);
    for (std::size_t m : {1, 2}) {
        for (std::size_t r : {1, 2}) {
            LinearSystem L = subdivided_identity(3, m, r);
            Group g(3, 1);
            FunctionOnG f = random_real(g, rng);
            double want = std::pow(spectrum_power_sum(fourier(f), 2.0 * r),
                                   static_cast<double>(m));
            cplx got = t_density(L, f);
            REQUIRE_THAT(got.real(), WithinAbs(want, 1e-9));
            REQUIRE_THAT(got.imag(), WithinAbs(0.0, 1e-9));
        }
    }
}

TEST_CASE("the diagonal averages a power of the function", "[harmonic][frozen]") {
    Rng rng(106);
    for (std::size_t m : {2, 3, 4}) {
        LinearSystem L = chain_system(5, m);
        Group g(5, 1);
        FunctionOnG f = random_real(g, rng);
        cplx want = 0.0;
        for (std::uint64_t x = 0; x < g.size(); ++x) want += std::pow(f[x], m);
        want /= static_cast<double>(g.size());
        REQUIRE_THAT(cdist(t_direct(L, std::vector<FunctionOnG>(m, f)), want),
                     WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("translation-invariant densities ignore a common shift", "[harmonic]") {
    Rng rng(107);
    LinearSystem L = k23_system(3);
    Group g(3, 2);
    std::vector<FunctionOnG> fs;
    for (std::size_t j = 0; j < 6; ++j) fs.push_back(random_complex(g, rng));
    cplx base = t_fourier(L, fs);
    for (std::uint64_t t : {1ull, 5ull}) {
        std::vector<FunctionOnG> shifted;
        for (const auto& f : fs) shifted.push_back(shift(f, t));
        REQUIRE_THAT(cdist(t_fourier(L, shifted), base), WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("densities multiply across tensor products", "[harmonic]") {
    Rng rng(108);
    LinearSystem L = u2_system(3);
    Group g1(3, 1), g2(3, 2);
    std::vector<FunctionOnG> fs, hs, prods;
    for (std::size_t j = 0; j < 4; ++j) {
        fs.push_back(random_complex(g1, rng));
        hs.push_back(random_complex(g2, rng));
        prods.push_back(tensor(fs.back(), hs.back()));
    }
    cplx want = t_fourier(L, fs) * t_fourier(L, hs);
    REQUIRE_THAT(cdist(t_fourier(L, prods), want), WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(cdist(t_direct(L, prods), want), WithinAbs(0.0, 1e-12));
}

TEST_CASE("convolution identities", "[harmonic]") {
    Group g(2, 1);
    FunctionOnG delta = point_mass(g, 0);
    FunctionOnG conv = convolve({delta, delta});
    REQUIRE_THAT(std::abs(conv[0] - 0.5), WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(std::abs(conv[1]), WithinAbs(0.0, 1e-12));

    // scaled point mass at 0 is the convolution identity
    Rng rng(109);
    Group g5(5, 2);
    FunctionOnG f = random_complex(g5, rng);
    FunctionOnG unit = point_mass(g5, 0, static_cast<double>(g5.size()));
    REQUIRE_THAT(table_dist(convolve({f, unit}), f), WithinAbs(0.0, 1e-10));

    FunctionOnG h = random_complex(g5, rng);
    REQUIRE_THAT(table_dist(convolve({f, h}), naive_convolve(f, h)), WithinAbs(0.0, 1e-12));
}

TEST_CASE("norms and weak norms", "[harmonic]") {
    Rng rng(110);
    Group g(2, 3);
    LinearSystem L = u2_system(2);
    FunctionOnG f = random_real(g, rng);

    // for a single alternating relation and real f, the norm is the fourth
    // root of the spectral fourth-power sum
    REQUIRE_THAT(norm_L(L, f), WithinAbs(u2_norm(f), 1e-12));

    // weak norm uses |f| and dominates nothing in general, but both are
    // non-negative and agree on non-negative inputs
    FunctionOnG fp = random_real(g, rng, 0.0, 1.0);
    REQUIRE_THAT(weak_norm_L(L, fp), WithinAbs(norm_L(L, fp), 1e-12));
    REQUIRE(weak_norm_L(L, f) >= 0.0);
}

TEST_CASE("conjugation sweep and symmetrised density", "[harmonic]") {
    Rng rng(111);
    Group g(3, 1);
    LinearSystem L = u2_system(3);
    std::vector<FunctionOnG> fs;
    for (std::size_t j = 0; j < 4; ++j) fs.push_back(random_complex(g, rng));

    // the all-ones pattern is plain t
    cplx t = t_direct(L, fs);
    REQUIRE_THAT(cdist(t_conjugated(L, {1, 1, 1, 1}, fs), t), WithinAbs(0.0, 1e-12));

    // all-zeros conjugates everything: t_L(conj f) = conj of t over -L = here
    // just the conjugate by symmetry of the solution set
    cplx tc = t_conjugated(L, {0, 0, 0, 0}, fs);
    std::vector<FunctionOnG> conj_fs = fs;
    for (auto& f : conj_fs)
        for (auto& x : f.v) x = std::conj(x);
    REQUIRE_THAT(cdist(tc, t_direct(L, conj_fs)), WithinAbs(0.0, 1e-12));

    // the sweep dominates plain |t| and every single pattern
    double s = s_density(L, fs);
    REQUIRE(s >= std::abs(t) - 1e-12);
    REQUIRE(s >= std::abs(tc) - 1e-12);

    // symmetrising over slots leaves a symmetric tuple unchanged
    std::vector<FunctionOnG> same(4, fs[0]);
    REQUIRE_THAT(cdist(symmetrised_density(L, same), t_direct(L, same)), WithinAbs(0.0, 1e-12));
}

TEST_CASE("function text format round-trips", "[harmonic][io]") {
    Rng rng(112);
    Group g(3, 2);
    FunctionOnG f = random_complex(g, rng);
    FunctionOnG f2 = parse_function_text(serialize_function(f));
    REQUIRE(f2.g == g);
    REQUIRE(table_dist(f, f2) == 0.0);  // %.17g round-trips doubles exactly

    FunctionOnG r = parse_function_text("2 1\n0.5\n-0.25 1\n");
    REQUIRE(r[0] == cplx(0.5, 0.0));
    REQUIRE(r[1] == cplx(-0.25, 1.0));
}

TEST_CASE("function parser rejects malformed input", "[harmonic][io]") {
    auto expect_parse_error = [](const std::string& text, const std::string& needle) {
        try {
            parse_function_text(text);
            FAIL("expected ParseError for: " << text);
        } catch (const ParseError& e) {
            REQUIRE(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_parse_error("", "unexpected end");
    expect_parse_error("2\n1\n1\n", "header");
    expect_parse_error("2 1\n1\n", "unexpected end");       // too few values
    expect_parse_error("2 1\nx\n1\n", "numeric");
    expect_parse_error("2 1\n1 0 9\n1\n", "unexpected token");
    expect_parse_error("4 1\n1\n1\n1\n1\n", "not prime");
}
