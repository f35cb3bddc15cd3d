#pragma once

#include <string>
#include <vector>

#include "normsys/cayley.hpp"
#include "normsys/checks.hpp"
#include "normsys/linsys_ops.hpp"

namespace normsys {

// Stock systems shared by the tests, the demos and the house checks.

// x_1 + ... + x_r = x_{r+1} + ... + x_{2r}
inline LinearSystem schatten_system(std::uint32_t q, std::size_t r) {
    Fq F(q);
    FqMatrix A(F, 1, 2 * r);
    for (std::size_t c = 0; c < r; ++c) {
        A.at(0, c) = 1;
        A.at(0, r + c) = F.neg(1);
    }
    return LinearSystem(A);
}

// x_1 - x_2 - x_3 + x_4 = 0
inline LinearSystem u2_system(std::uint32_t q) {
    return LinearSystem(FqMatrix(Fq(q), {{1, -1, -1, 1}}));
}

// x_1 = x_2 = ... = x_m (the diagonal)
inline LinearSystem chain_system(std::uint32_t q, std::size_t m) {
    Fq F(q);
    if (m < 2) throw DimensionMismatch("chain needs at least two variables");
    FqMatrix A(F, m - 1, m);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        A.at(i, i) = 1;
        A.at(i, i + 1) = F.neg(1);
    }
    return LinearSystem(A);
}

// m independent equations x_j = x_j' (identity system), r-subdivided
inline LinearSystem subdivided_identity(std::uint32_t q, std::size_t m, std::size_t r) {
    Fq F(q);
    FqMatrix I(F, m, m);
    for (std::size_t i = 0; i < m; ++i) I.at(i, i) = 1;
    return subdivide(LinearSystem(I), r);
}

// x1 - x2 = x3 - x4 = x5 - x6 (two equations, six variables)
inline LinearSystem k23_system(std::uint32_t q) {
    return LinearSystem(FqMatrix(Fq(q), {{1, -1, -1, 1, 0, 0}, {0, 0, 1, -1, -1, 1}}));
}

// x1 + x2 = x3 + x4 and x4 + x5 = x6 + x7 (shares one variable; the
// one-subdivided triangle-with-tail shape that breaks variable transitivity)
inline LinearSystem overlapped_pair_system(std::uint32_t q) {
    return LinearSystem(
        FqMatrix(Fq(q), {{1, 1, -1, -1, 0, 0, 0}, {0, 0, 0, 1, 1, -1, -1}}));
}

// reference system of the one-subdivided K4 on 12 edge variables
inline LinearSystem k4_subdivided_reference(std::uint32_t q) {
    return LinearSystem(FqMatrix(Fq(q), {{1, -1, 1, -1, 1, -1, 0, 0, 0, 0, 0, 0},
                                         {0, 0, 0, 0, -1, 1, -1, 1, -1, 1, 0, 0},
                                         {-1, 1, 0, 0, 0, 0, 1, -1, 0, 0, 1, -1}}));
}

// reference system compiled from K_{3,3}
inline LinearSystem k33_reference(std::uint32_t q) {
    return LinearSystem(FqMatrix(Fq(q), {{1, -1, 1, -1, 0, 0, 0, 0, 0},
                                         {0, 0, -1, 1, -1, 1, 0, 0, 0},
                                         {-1, 0, 0, 1, 0, 0, 1, -1, 0},
                                         {0, 0, -1, 0, 0, 1, 0, 1, -1}}));
}

// worked 4x5 example whose solutions are the constant vectors
inline LinearSystem diagonal_example_system(std::uint32_t q = 5) {
    return LinearSystem(FqMatrix(Fq(q), {{1, -1, 0, 0, 0},
                                         {1, 1, -2, 0, 0},
                                         {0, 0, -2, 1, 1},
                                         {0, 0, 0, 1, -1}}));
}

struct NamedSystem {
    std::string name;
    LinearSystem system;
    bool norming;  // true: norm for real inputs; false: known weakly norming only
};

// Catalogue of systems that carry a (weak) norm; used to regression-test the
// necessary-condition checks and the sampling inequalities.
inline std::vector<NamedSystem> builtin_norming_catalogue() {
    std::vector<NamedSystem> out;
    for (std::uint32_t q : {2u, 3u, 5u})
        for (std::size_t r : {1u, 2u, 3u})
            out.push_back({"schatten_q" + std::to_string(q) + "_r" + std::to_string(r),
                           schatten_system(q, r), true});
    for (std::uint32_t q : {2u, 3u})
        for (std::size_t m : {1u, 2u})
            for (std::size_t r : {1u, 2u})
                out.push_back({"sub" + std::to_string(r) + "_identity" + std::to_string(m) +
                                   "_q" + std::to_string(q),
                               subdivided_identity(q, m, r), true});
    out.push_back({"chain4_q3", chain_system(3, 4), true});
    return out;
}

inline std::vector<NamedSystem> builtin_weakly_norming_catalogue() {
    std::vector<NamedSystem> out = builtin_norming_catalogue();
    out.push_back({"chain3_q3", chain_system(3, 3), false});
    out.push_back({"chain3_q5", chain_system(5, 3), false});
    out.push_back({"k23_q5", k23_system(5), false});
    out.push_back({"k23_q3", k23_system(3), false});
    for (std::uint32_t q : {3u, 5u}) {
        Fq F(q);
        out.push_back({"triple_schatten_r1_q" + std::to_string(q),
                       LinearSystem(triple_schatten_template(F, 1)), false});
    }
    out.push_back({"k22_q2", build_h_system(complete_bipartite(2, 2), 2).system, false});
    out.push_back({"k33_q5", build_h_system(complete_bipartite(3, 3), 5).system, false});
    return out;
}

}  // namespace normsys
