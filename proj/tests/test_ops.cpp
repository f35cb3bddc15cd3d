#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <set>

#include "support.hpp"

using namespace normsys;
using namespace testsupport;
using Catch::Matchers::WithinAbs;

namespace {

// all row-space vectors of L as plain value vectors
std::set<std::vector<FqScalar>> row_space_set(const LinearSystem& L) {
    const Fq& F = L.field();
    std::size_t m = L.m(), k = L.k();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < m; ++i) total *= F.q();
    std::set<std::vector<FqScalar>> out;
    for (std::uint64_t it = 0; it < total; ++it) {
        std::uint64_t rem = it;
        std::vector<FqScalar> v(k, 0);
        for (std::size_t i = 0; i < m; ++i) {
            FqScalar c = static_cast<FqScalar>(rem % F.q());
            rem /= F.q();
            for (std::size_t j = 0; j < k; ++j)
                v[j] = F.add(v[j], F.mul(c, L.matrix().at(i, j)));
        }
        out.insert(v);
    }
    return out;
}

// solution set over F_q^1 as sorted tuples, by full enumeration
std::set<std::vector<FqScalar>> solution_set(const LinearSystem& L) {
    const Fq& F = L.field();
    std::size_t k = L.k();
    std::uint64_t total = 1;
    for (std::size_t j = 0; j < k; ++j) total *= F.q();
    std::set<std::vector<FqScalar>> out;
    for (std::uint64_t it = 0; it < total; ++it) {
        std::uint64_t rem = it;
        std::vector<FqScalar> x(k);
        for (std::size_t j = 0; j < k; ++j) {
            x[j] = static_cast<FqScalar>(rem % F.q());
            rem /= F.q();
        }
        bool ok = true;
        for (std::size_t i = 0; i < L.m() && ok; ++i) {
            FqScalar s = 0;
            for (std::size_t j = 0; j < k; ++j) s = F.add(s, F.mul(L.matrix().at(i, j), x[j]));
            ok = s == 0;
        }
        if (ok) out.insert(x);
    }
    return out;
}

}  // namespace

TEST_CASE("subdivision doubles and repeats columns with signs", "[ops][subdivide]") {
    LinearSystem one = parse_system("3 1 1\n1\n");
    LinearSystem s1 = subdivide(one, 1);
    REQUIRE(s1.m() == 1);
    REQUIRE(s1.k() == 2);
    REQUIRE(s1.matrix().at(0, 0) == 1);
    REQUIRE(s1.matrix().at(0, 1) == 2);

    LinearSystem I2 = parse_system("5 2 2\n1 0\n0 1\n");
    LinearSystem s2 = subdivide(I2, 2);
    REQUIRE(s2.m() == 2);
    REQUIRE(s2.k() == 8);
    FqMatrix expected(Fq(5), {{1, 1, 4, 4, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 1, 4, 4}});
    REQUIRE(s2.matrix() == expected);

    REQUIRE_THROWS_AS(subdivide(one, 0), DimensionMismatch);
}

TEST_CASE("subdivided solutions are block-sum solutions", "[ops][subdivide]") {
    LinearSystem L = parse_system("3 1 2\n1 2\n");
    LinearSystem S = subdivide(L, 1);
    const Fq& F = L.field();
    for (const auto& x : solution_set(S)) {
        // y_j = (copies) - (negated copies)
        FqScalar y0 = F.sub(x[0], x[1]), y1 = F.sub(x[2], x[3]);
        REQUIRE(F.add(F.mul(1, y0), F.mul(2, y1)) == 0);
    }
    // counts match too: each L-solution lifts q^(2rk - k) / ... just compare sizes
    std::uint64_t lift = 0;
    for (const auto& x : solution_set(S)) {
        (void)x;
        ++lift;
    }
    REQUIRE(lift == solution_set(L).size() * 9);  // two free differences of two vars each
}

TEST_CASE("subdivision scales the girth", "[ops][subdivide]") {
    LinearSystem u2 = u2_system(3);
    REQUIRE(row_space_profile(u2).girth == 4);
    REQUIRE(row_space_profile(subdivide(u2, 1)).girth == 8);
    LinearSystem chain = chain_system(3, 3);
    REQUIRE(row_space_profile(chain).girth == 2);
    REQUIRE(row_space_profile(subdivide(chain, 2)).girth == 8);
}

TEST_CASE("variable deletion projects the solution set", "[ops][delete]") {
    for (const char* text : {"3 1 2\n1 2\n", "3 2 4\n1 0 2 1\n0 1 1 1\n",
                             "5 2 6\n1 4 4 1 0 0\n0 0 1 4 4 1\n", "2 1 3\n1 1 1\n"}) {
        LinearSystem L = parse_system(text);
        for (std::size_t var = 0; var < L.k(); ++var) {
            LinearSystem D = delete_variable(L, var);
            REQUIRE(D.k() == L.k() - 1);
            std::set<std::vector<FqScalar>> projected;
            for (const auto& x : solution_set(L)) {
                std::vector<FqScalar> y;
                for (std::size_t j = 0; j < L.k(); ++j)
                    if (j != var) y.push_back(x[j]);
                projected.insert(y);
            }
            REQUIRE(solution_set(D) == projected);
        }
    }
}

TEST_CASE("deletion drops the rank exactly on non-zero columns", "[ops][delete]") {
    LinearSystem L = parse_system("3 1 3\n1 1 0\n");
    REQUIRE(delete_variable(L, 0).m() == 0);
    REQUIRE(delete_variable(L, 2).m() == 1);  // zero column: rank kept
    REQUIRE_THROWS_AS(delete_variable(L, 3), DimensionMismatch);
    REQUIRE_THROWS_AS(delete_variable(parse_system("3 1 1\n1\n"), 0), DimensionMismatch);
}

TEST_CASE("deleting around the shared variable distinguishes the overlapped pair",
          "[ops][delete]") {
    LinearSystem L = overlapped_pair_system(5);
    LinearSystem d1 = delete_variable(L, 0);
    LinearSystem d2 = delete_variable(L, 1);
    LinearSystem d3 = delete_variable(L, 2);
    LinearSystem d4 = delete_variable(L, 3);  // the shared variable
    REQUIRE(isomorphic(d1, d2));
    REQUIRE(isomorphic(d1, d3));
    REQUIRE_FALSE(isomorphic(d1, d4));
    // deleting an outer variable leaves one whole relation plus dead columns
    REQUIRE(d1.m() == 1);
    REQUIRE(d4.m() == 1);
}

TEST_CASE("induced subsystem on every variable is the system itself", "[ops][induced]") {
    LinearSystem L = k23_system(3);
    std::vector<std::size_t> all(L.k());
    std::iota(all.begin(), all.end(), 0);
    REQUIRE(induced_subsystem(L, all) == L);
    REQUIRE_THROWS_AS(induced_subsystem(L, {0, 0, 1}), DimensionMismatch);
    REQUIRE_THROWS_AS(induced_subsystem(L, {}), DimensionMismatch);
    REQUIRE_THROWS_AS(induced_subsystem(L, {9}), DimensionMismatch);
}

TEST_CASE("canonical form is a true isomorphism invariant", "[ops][canonical]") {
    Rng rng(31);
    std::vector<LinearSystem> bases = {
        u2_system(3),
        k23_system(3),
        overlapped_pair_system(5),
        parse_system("5 1 4\n1 2 -1 -2\n"),
        parse_system("2 2 5\n1 1 0 1 1\n0 1 1 1 1\n"),
    };
    for (const auto& L : bases) {
        CanonicalForm base = canonical_form(L);
        // the permutation really produces the canonical matrix
        REQUIRE(rref(L.echelon().select_cols(base.permutation)) == base.matrix);
        // and stays fixed across random isomorphic copies
        for (int i = 0; i < 10; ++i) {
            LinearSystem S = scramble(L, rng);
            CanonicalForm c = canonical_form(S);
            REQUIRE(c.matrix == base.matrix);
            REQUIRE(rref(S.echelon().select_cols(c.permutation)) == c.matrix);
            REQUIRE(isomorphic(L, S));
        }
    }
}

TEST_CASE("non-isomorphic systems get distinct canonical forms", "[ops][canonical]") {
    REQUIRE_FALSE(isomorphic(u2_system(5), parse_system("5 1 4\n1 2 -1 -2\n")));
    REQUIRE_FALSE(isomorphic(u2_system(3), u2_system(5)));       // different fields
    REQUIRE_FALSE(isomorphic(u2_system(3), chain_system(3, 4))); // different shapes
    Rng rng(1);
    REQUIRE(isomorphic(k23_system(5), scramble(k23_system(5), rng)));
}

TEST_CASE("canonical form respects its budgets", "[ops][canonical]") {
    FqMatrix wide(Fq(2), 1, 13);
    for (std::size_t j = 0; j < 13; ++j) wide.at(0, j) = 1;
    REQUIRE_THROWS_AS(canonical_form(LinearSystem(wide)), BudgetExceeded);
    REQUIRE_THROWS_AS(canonical_form(k23_system(3), 5), BudgetExceeded);

    LinearSystem Z{FqMatrix(Fq(3), 0, 4)};
    CanonicalForm c = canonical_form(Z);
    REQUIRE(c.matrix.rows() == 0);
    REQUIRE(c.permutation == std::vector<std::size_t>({0, 1, 2, 3}));
}

TEST_CASE("component split of block systems", "[ops][components]") {
    LinearSystem blocks = parse_system("3 2 4\n1 -1 0 0\n0 0 1 -1\n");
    ComponentSplit cs = components(blocks);
    REQUIRE(cs.parts.size() == 2);
    REQUIRE(cs.parts[0] == std::vector<std::size_t>({0, 1}));
    REQUIRE(cs.parts[1] == std::vector<std::size_t>({2, 3}));
    REQUIRE(isomorphic(cs.systems[0], cs.systems[1]));

    // connected examples stay whole
    REQUIRE(components(k23_system(3)).parts.size() == 1);
    REQUIRE(components(overlapped_pair_system(5)).parts.size() == 1);

    // zero columns split off as unconstrained singletons
    LinearSystem zc = parse_system("3 1 3\n1 -1 0\n");
    ComponentSplit zs = components(zc);
    REQUIRE(zs.parts.size() == 2);
    REQUIRE(zs.parts[1] == std::vector<std::size_t>({2}));
    REQUIRE(zs.systems[1].m() == 0);
}

TEST_CASE("components preserve total shape and factor the density", "[ops][components]") {
    Rng rng(37);
    LinearSystem L = parse_system("3 3 7\n1 -1 0 0 0 0 0\n0 0 1 -1 -1 1 0\n0 0 0 0 0 0 1\n");
    ComponentSplit cs = components(L);
    std::size_t msum = 0, ksum = 0;
    for (const auto& S : cs.systems) {
        msum += S.m();
        ksum += S.k();
    }
    REQUIRE(msum == L.m());
    REQUIRE(ksum == L.k());
    REQUIRE(cs.parts.size() == 3);

    // t factors as a product over the parts
    Group g(3, 1);
    std::vector<FunctionOnG> fs;
    for (std::size_t j = 0; j < L.k(); ++j) fs.push_back(random_complex(g, rng));
    cplx whole = t_direct(L, fs);
    cplx prod = 1.0;
    for (std::size_t p = 0; p < cs.parts.size(); ++p) {
        std::vector<FunctionOnG> part_fs;
        for (std::size_t j : cs.parts[p]) part_fs.push_back(fs[j]);
        prod *= t_direct(cs.systems[p], part_fs);
    }
    REQUIRE_THAT(cdist(whole, prod), WithinAbs(0.0, 1e-12));
}

TEST_CASE("image intersection counts match explicit row-space intersections", "[ops]") {
    auto brute = [](const LinearSystem& L, const LinearSystem& M, std::uint32_t n) {
        auto a = row_space_set(L), b = row_space_set(M);
        std::uint64_t inter = 0;
        for (const auto& v : a) inter += b.count(v);
        std::uint64_t out = 1;
        for (std::uint32_t i = 0; i < n; ++i) out *= inter;
        return out;
    };

    LinearSystem L = parse_system("3 2 4\n1 -1 0 0\n0 0 1 -1\n");
    LinearSystem M = parse_system("3 2 4\n1 1 0 0\n0 0 1 1\n");
    REQUIRE(image_intersection_count(L, L, 2) == 81);  // q^(n m)
    REQUIRE(image_intersection_count(L, M, 1) == brute(L, M, 1));

    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        std::uint32_t q = std::vector<std::uint32_t>{2, 3, 5}[rng.below(3)];
        std::size_t m = 1 + rng.below(2), k = m + 1 + rng.below(3);
        auto random_system = [&]() {
            while (true) {
                FqMatrix A(Fq(q), m, k);
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t j = 0; j < k; ++j)
                        A.at(i, j) = static_cast<FqScalar>(rng.below(q));
                if (rank(A) == m) return LinearSystem(A);
            }
        };
        LinearSystem A = random_system(), B = random_system();
        std::uint32_t n = 1 + rng.below(2);
        REQUIRE(image_intersection_count(A, B, n) == brute(A, B, n));
    }
}

TEST_CASE("scramble produces a faithful isomorphic copy", "[ops][scramble]") {
    Rng rng(43);
    LinearSystem L = k23_system(5);
    for (int i = 0; i < 10; ++i) {
        LinearSystem S = scramble(L, rng);
        REQUIRE(S.q() == L.q());
        REQUIRE(S.m() == L.m());
        REQUIRE(S.k() == L.k());
        REQUIRE(isomorphic(L, S));
    }
}
