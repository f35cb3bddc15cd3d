#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace normsys;

TEST_CASE("field axioms hold exhaustively for small primes", "[fq]") {
    for (std::uint32_t q : {2u, 3u, 5u, 7u, 13u}) {
        Fq F(q);
        REQUIRE(F.q() == q);
        for (FqScalar a = 0; a < q; ++a) {
            REQUIRE(F.add(a, F.neg(a)) == 0);
            REQUIRE(F.sub(a, a) == 0);
            REQUIRE(F.mul(a, 1) == a);
            if (a != 0) {
                REQUIRE(F.mul(a, F.inv(a)) == 1);
                REQUIRE(F.pow(a, q - 1) == 1);  // Fermat
            }
            for (FqScalar b = 0; b < q; ++b) {
                REQUIRE(F.add(a, b) == F.add(b, a));
                REQUIRE(F.mul(a, b) == F.mul(b, a));
                REQUIRE(F.sub(a, b) == F.add(a, F.neg(b)));
                for (FqScalar c = 0; c < q; ++c) {
                    REQUIRE(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
                    REQUIRE(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
                    REQUIRE(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("reduce maps negative representatives into range", "[fq]") {
    Fq F(7);
    REQUIRE(F.reduce(-1) == 6);
    REQUIRE(F.reduce(-7) == 0);
    REQUIRE(F.reduce(-15) == 6);
    REQUIRE(F.reduce(20) == 6);
    REQUIRE(F.reduce(0) == 0);
}

TEST_CASE("composite and degenerate moduli are rejected", "[fq]") {
    for (std::uint32_t q : {0u, 1u, 4u, 6u, 9u, 12u, 15u}) {
        REQUIRE_FALSE(is_prime_u32(q));
        REQUIRE_THROWS_AS(Fq(q), ParseError);
    }
    for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u, 101u}) REQUIRE(is_prime_u32(q));
}

TEST_CASE("inverse of zero is an error", "[fq]") {
    REQUIRE_THROWS_AS(Fq(5).inv(0), DimensionMismatch);
}

TEST_CASE("rref is idempotent and rank-bounded on random matrices", "[fq][rref]") {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        std::uint32_t q = std::vector<std::uint32_t>{2, 3, 5}[rng.below(3)];
        std::size_t m = 1 + rng.below(4), k = m + rng.below(4);
        Fq F(q);
        FqMatrix A(F, m, k);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < k; ++j) A.at(i, j) = static_cast<FqScalar>(rng.below(q));
        FqMatrix R = rref(A);
        REQUIRE(R.rows() <= std::min(m, k));
        REQUIRE(rref(R) == R);
        REQUIRE(rank(A) == R.rows());
        // leading entries are 1 and sit in strictly increasing columns
        std::size_t last = 0;
        bool first = true;
        for (std::size_t i = 0; i < R.rows(); ++i) {
            std::size_t c = 0;
            while (c < k && R.at(i, c) == 0) ++c;
            REQUIRE(c < k);
            REQUIRE(R.at(i, c) == 1);
            if (!first) REQUIRE(c > last);
            last = c;
            first = false;
        }
    }
}

TEST_CASE("frozen echelon form of the diagonal five-variable example", "[fq][rref]") {
    // 4x5 over F_5: x1 = x2 = x3 = x4 = x5 written as differences
    LinearSystem L = diagonal_example_system();
    Fq F(5);
    FqMatrix expected(F, {{1, 0, 0, 0, 4}, {0, 1, 0, 0, 4}, {0, 0, 1, 0, 4}, {0, 0, 0, 1, 4}});
    REQUIRE(L.echelon() == expected);
    REQUIRE(rank(L.matrix()) == 4);

    FqMatrix K = L.kernel();
    REQUIRE(K.rows() == 5);
    REQUIRE(K.cols() == 1);
    for (std::size_t i = 0; i < 5; ++i) REQUIRE(K.at(i, 0) == K.at(0, 0));
    REQUIRE(K.at(0, 0) != 0);
}

TEST_CASE("kernel basis annihilates the matrix", "[fq][kernel]") {
    Rng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        std::uint32_t q = std::vector<std::uint32_t>{2, 3, 5, 7}[rng.below(4)];
        std::size_t m = 1 + rng.below(3), k = m + 1 + rng.below(3);
        Fq F(q);
        FqMatrix A(F, m, k);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < k; ++j) A.at(i, j) = static_cast<FqScalar>(rng.below(q));
        FqMatrix K = kernel_basis(A);
        REQUIRE(K.rows() == k);
        REQUIRE(K.cols() == k - rank(A));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t c = 0; c < K.cols(); ++c) {
                FqScalar s = 0;
                for (std::size_t j = 0; j < k; ++j) s = F.add(s, F.mul(A.at(i, j), K.at(j, c)));
                REQUIRE(s == 0);
            }
        REQUIRE(rank(K) == K.cols());  // columns independent
    }
}

TEST_CASE("matrix text format round-trips", "[fq][io]") {
    FqMatrix A(Fq(5), {{1, 2, 4, 3}, {0, 1, 1, 3}});
    std::string text = serialize_matrix(A);
    FqMatrix B = parse_matrix(text);
    REQUIRE(A == B);
    REQUIRE(text == "5 2 4\n1 2 4 3\n0 1 1 3\n");

    // negative entries and full-line comments are accepted on input
    FqMatrix C = parse_matrix("# comment line\n5 1 4\n\n1 2 -1 -2\n");
    FqMatrix D(Fq(5), {{1, 2, 4, 3}});
    REQUIRE(C == D);

    // comments are whole-line only; a '#' after data is junk
    REQUIRE_THROWS_AS(parse_matrix("5 1 4\n1 2 -1 -2 # trailing\n"), ParseError);
}

TEST_CASE("matrix parser reports malformed input with line numbers", "[fq][io]") {
    auto expect_parse_error = [](const std::string& text, const std::string& needle) {
        try {
            parse_matrix(text);
            FAIL("expected ParseError for: " << text);
        } catch (const ParseError& e) {
            REQUIRE(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_parse_error("", "unexpected end");
    expect_parse_error("5 2\n", "header");
    expect_parse_error("4 1 2\n1 1\n", "not prime");
    expect_parse_error("5 2 1\n1\n1\n", "0 <= m <= k");
    expect_parse_error("5 1 3\n1 2\n", "expected 3 entries");
    expect_parse_error("5 1 3\n1 2 x\n", "unexpected token 'x'");
    expect_parse_error("2 1 1\n1 extra\n", "unexpected token");

    try {
        parse_matrix("5 1 3\n\n1 2\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        REQUIRE(e.line() == 3);  // blank lines still advance the count
    }
}

TEST_CASE("dependent rows are rejected at system construction", "[fq][system]") {
    REQUIRE_THROWS_AS(parse_system("5 2 3\n1 2 3\n2 4 6\n"), ParseError);
    try {
        parse_system("3 2 4\n1 1 1 0\n2 2 2 0\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        REQUIRE(std::string(e.what()).find("rows not independent") != std::string::npos);
    }
    // the zero-row system m = 0 is legal
    LinearSystem Z{FqMatrix(Fq(3), 0, 4)};
    REQUIRE(Z.m() == 0);
    REQUIRE(Z.k() == 4);
    REQUIRE(Z.kernel().cols() == 4);
}

TEST_CASE("select_cols, transpose and vstack behave", "[fq][matrix]") {
    FqMatrix A(Fq(7), {{1, 2, 3}, {4, 5, 6}});
    FqMatrix S = A.select_cols({2, 0});
    REQUIRE(S.at(0, 0) == 3);
    REQUIRE(S.at(1, 1) == 4);
    FqMatrix T = A.transpose();
    REQUIRE(T.rows() == 3);
    REQUIRE(T.at(2, 1) == 6);
    FqMatrix V = A.vstack(A);
    REQUIRE(V.rows() == 4);
    REQUIRE(V.at(3, 0) == 4);
    REQUIRE_THROWS_AS(A.vstack(T), DimensionMismatch);
    REQUIRE(A.col_is_zero(0) == false);
    FqMatrix Zc(Fq(7), {{0, 1}, {0, 2}});
    REQUIRE(Zc.col_is_zero(0));
}
