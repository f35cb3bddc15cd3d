#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "normsys/density.hpp"
#include "normsys/errors.hpp"
#include "normsys/linsys_ops.hpp"

namespace normsys {

// r-uniform hypergraph on vertices 0..d-1.  Edges are sorted vertex sets;
// repeated edges and repeated vertices within an edge are rejected.
struct Hypergraph {
    std::uint32_t vertex_count = 0;
    std::uint32_t uniformity = 0;
    std::vector<std::vector<std::uint32_t>> edges;

    Hypergraph(std::uint32_t d, std::uint32_t r,
               std::vector<std::vector<std::uint32_t>> edge_list)
        : vertex_count(d), uniformity(r), edges(std::move(edge_list)) {
        if (r == 0 || d == 0) throw ParseError("hypergraph needs d >= 1, r >= 1");
        if (edges.empty()) throw ParseError("hypergraph needs at least one edge");
        std::set<std::vector<std::uint32_t>> seen;
        for (auto& e : edges) {
            if (e.size() != r) throw ParseError("edge arity differs from uniformity");
            std::sort(e.begin(), e.end());
            if (std::adjacent_find(e.begin(), e.end()) != e.end())
                throw ParseError("repeated vertex within an edge");
            if (e.back() >= d) throw ParseError("vertex index out of range");
            if (!seen.insert(e).second) throw ParseError("repeated edge");
        }
    }

    std::size_t edge_count() const { return edges.size(); }

    // connected components, isolated vertices included
    std::size_t component_count() const {
        std::vector<std::uint32_t> parent(vertex_count);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::uint32_t a) {
            while (parent[a] != a) a = parent[a] = parent[parent[a]];
            return a;
        };
        for (const auto& e : edges)
            for (std::size_t i = 1; i < e.size(); ++i) parent[find(e[i])] = find(e[0]);
        std::set<std::uint32_t> roots;
        for (std::uint32_t v = 0; v < vertex_count; ++v) roots.insert(find(v));
        return roots.size();
    }
};

// The pattern sums f over the edges of H at a generic vertex assignment; the
// induced linear constraints among the per-edge sums y_e = sum_{v in e} x_v
// are the left null space of the edge-vertex incidence matrix.
struct HSystem {
    LinearSystem system;    // rows: a basis of {a : a^T B = 0}
    FqMatrix incidence;     // B, |E| x |V|, entries 0/1
};

inline HSystem build_h_system(const Hypergraph& H, std::uint32_t q) {
    Fq F(q);
    const std::size_t k = H.edge_count(), d = H.vertex_count;
    FqMatrix B(F, k, d);
    for (std::size_t e = 0; e < k; ++e)
        for (std::uint32_t v : H.edges[e]) B.at(e, v) = 1;
    // a^T B = 0  <=>  B^T a = 0
    FqMatrix K = kernel_basis(B.transpose());  // k x (k - rank B)
    FqMatrix rows = rref(K.transpose());       // deterministic row basis
    return {LinearSystem(rows), B};
}

// E over all vertex assignments of prod_edges f(sum of the edge's vertices),
// evaluated by brute force; must match t of the compiled system.
inline cplx hypergraph_density(const Hypergraph& H, const FunctionOnG& f,
                               const Budgets& budgets = Budgets{}) {
    const Group& g = f.g;
    std::uint64_t total = detail::checked_pow(g.size(), H.vertex_count, budgets.max_enum,
                                              "vertex enumeration exceeds budget");
    std::vector<std::uint64_t> x(H.vertex_count, 0);
    cplx acc = 0.0;
    for (std::uint64_t it = 0;; ++it) {
        cplx prod = 1.0;
        for (const auto& e : H.edges) {
            std::uint64_t s = 0;
            for (std::uint32_t v : e) s = g.add(s, x[v]);
            prod *= f[s];
        }
        acc += prod;
        if (it + 1 == total) break;
        for (std::size_t d2 = 0;; ++d2) {
            x[d2] = x[d2] + 1 == g.size() ? 0 : x[d2] + 1;
            if (x[d2] != 0) break;
        }
    }
    return acc / static_cast<double>(total);
}

struct CayleyCrosscheck {
    cplx pattern_side = 0.0;   // brute-force density over vertex assignments
    cplx system_side = 0.0;    // t of the compiled system
    double discrepancy = 0.0;
};

inline CayleyCrosscheck cayley_density_crosscheck(const Hypergraph& H, std::uint32_t q,
                                                  const FunctionOnG& f,
                                                  const Budgets& budgets = Budgets{}) {
    if (f.g.q() != q) throw DimensionMismatch("function modulus differs from requested field");
    HSystem hs = build_h_system(H, q);
    CayleyCrosscheck out;
    out.pattern_side = hypergraph_density(H, f, budgets);
    out.system_side = t_density(hs.system, f, budgets);
    out.discrepancy = std::abs(out.pattern_side - out.system_side);
    return out;
}

// ---------------------------------------------------------------------------
// Cycles of a graph (r = 2) and the row-space vectors they carry.  An even
// cycle supports the alternating +-1 vector on its edges, which annihilates
// the incidence matrix over every field.  An odd cycle annihilates only in
// characteristic 2, via the all-ones vector; over odd characteristic it is
// flagged with no vector.

struct CycleVector {
    std::vector<std::size_t> edge_indices;      // in traversal order
    std::vector<FqScalar> coefficients;         // length |E|; empty when flagged
    bool annihilates = false;
};

struct GraphCircuits {
    std::vector<CycleVector> cycles;
};

namespace detail {

// simple cycles with at least 3 vertices; each reported once, smallest vertex
// first and second-smallest neighbour direction fixed
inline void enumerate_cycles(const Hypergraph& H,
                             std::vector<std::vector<std::size_t>>& out_edge_seqs) {
    const std::size_t k = H.edge_count();
    std::vector<std::vector<std::pair<std::uint32_t, std::size_t>>> adj(H.vertex_count);
    for (std::size_t e = 0; e < k; ++e) {
        adj[H.edges[e][0]].push_back({H.edges[e][1], e});
        adj[H.edges[e][1]].push_back({H.edges[e][0], e});
    }
    std::vector<std::uint32_t> path;
    std::vector<bool> on_path(H.vertex_count, false);
    std::vector<std::size_t> edge_seq;

    std::function<void(std::uint32_t, std::uint32_t)> dfs = [&](std::uint32_t start,
                                                                std::uint32_t v) {
        for (const auto& [w, e] : adj[v]) {
            if (w == start && path.size() >= 3) {
                if (path[1] < path.back()) {  // fix the traversal direction
                    edge_seq.push_back(e);
                    out_edge_seqs.push_back(edge_seq);
                    edge_seq.pop_back();
                }
                continue;
            }
            if (w <= start || on_path[w]) continue;
            path.push_back(w);
            on_path[w] = true;
            edge_seq.push_back(e);
            dfs(start, w);
            edge_seq.pop_back();
            on_path[w] = false;
            path.pop_back();
        }
    };
    for (std::uint32_t s = 0; s < H.vertex_count; ++s) {
        path = {s};
        on_path.assign(H.vertex_count, false);
        on_path[s] = true;
        edge_seq.clear();
        dfs(s, s);
    }
}

}  // namespace detail

inline GraphCircuits graph_circuits(const Hypergraph& H, std::uint32_t q) {
    if (H.uniformity != 2) throw NotAGraph("cycle enumeration needs a graph (r = 2)");
    if (H.edge_count() > 20) throw BudgetExceeded("cycle enumeration limited to 20 edges");
    Fq F(q);
    HSystem hs = build_h_system(H, q);
    std::vector<std::vector<std::size_t>> seqs;
    detail::enumerate_cycles(H, seqs);

    GraphCircuits out;
    for (const auto& seq : seqs) {
        CycleVector cv;
        cv.edge_indices = seq;
        bool even = seq.size() % 2 == 0;
        if (even || q == 2) {
            cv.coefficients.assign(H.edge_count(), 0);
            for (std::size_t i = 0; i < seq.size(); ++i)
                cv.coefficients[seq[i]] = (even && i % 2 == 1) ? F.neg(1) : 1;
            // verify the annihilation a^T B = 0
            cv.annihilates = true;
            for (std::size_t vcol = 0; vcol < H.vertex_count; ++vcol) {
                FqScalar s = 0;
                for (std::size_t e = 0; e < H.edge_count(); ++e)
                    s = F.add(s, F.mul(cv.coefficients[e], hs.incidence.at(e, vcol)));
                if (s != 0) cv.annihilates = false;
            }
        }
        out.cycles.push_back(std::move(cv));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Two-fold blow-up used by the subdivision correspondence: each vertex v
// splits into v+ and v-, each edge e gains a fresh vertex, and e is replaced
// by e+ u {e} and e- u {e}.  Edges 2i and 2i+1 of the result are the two
// copies of edge i, matching the column layout of subdivide(..., 1).

inline Hypergraph blow_up_two(const Hypergraph& H) {
    const std::uint32_t d = H.vertex_count;
    const std::uint32_t k = static_cast<std::uint32_t>(H.edge_count());
    std::vector<std::vector<std::uint32_t>> edges;
    for (std::uint32_t e = 0; e < k; ++e) {
        std::vector<std::uint32_t> plus, minus;
        for (std::uint32_t v : H.edges[e]) {
            plus.push_back(v);          // v+ keeps its index
            minus.push_back(d + v);     // v- shifted by d
        }
        plus.push_back(2 * d + e);      // the edge vertex
        minus.push_back(2 * d + e);
        edges.push_back(plus);
        edges.push_back(minus);
    }
    return Hypergraph(2 * d + k, H.uniformity + 1, std::move(edges));
}

// ---------------------------------------------------------------------------
// Spot check of the norm sandwich for a norming graph H with e = |E| edges:
// for every |f| <= 1, (i) ||f||_{U2} <= ||f||_{L_H}^{2/e} and (ii)
// ||f||_{L_H} <= ||f||_{U2}.  Returns the worst slack of each side over
// random clipped samples (negative slack = violation).

struct U2SpotCheck {
    std::size_t samples = 0;
    double worst_slack_u2_bound = 0.0;   // min over samples of rhs - lhs in (i)
    double worst_slack_l_bound = 0.0;    // same for (ii)
    bool pass = true;
};

inline U2SpotCheck u2_equivalence_spotcheck(const Hypergraph& H, std::uint32_t q, const Group& g,
                                            std::size_t samples, Rng rng, double tol = 1e-9,
                                            const Budgets& budgets = Budgets{}) {
    HSystem hs = build_h_system(H, q);
    const double e_cnt = static_cast<double>(H.edge_count());
    U2SpotCheck out;
    out.samples = samples;
    bool first = true;
    for (std::size_t s = 0; s < samples; ++s) {
        FunctionOnG f = random_real(g, rng, -1.0, 1.0);  // already |f| <= 1
        double norm_l = norm_L(hs.system, f, budgets);
        double norm_u2 = u2_norm(f);
        double slack_i = std::pow(norm_l, 2.0 / e_cnt) - norm_u2;
        double slack_ii = norm_u2 - norm_l;
        if (first || slack_i < out.worst_slack_u2_bound) out.worst_slack_u2_bound = slack_i;
        if (first || slack_ii < out.worst_slack_l_bound) out.worst_slack_l_bound = slack_ii;
        first = false;
    }
    out.pass = out.worst_slack_u2_bound >= -tol && out.worst_slack_l_bound >= -tol;
    return out;
}

// ---------------------------------------------------------------------------
// Standard constructions

inline Hypergraph complete_bipartite(std::uint32_t a, std::uint32_t b) {
    std::vector<std::vector<std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < a; ++i)
        for (std::uint32_t j = 0; j < b; ++j) edges.push_back({i, a + j});
    return Hypergraph(a + b, 2, std::move(edges));
}

inline Hypergraph cycle_graph(std::uint32_t len) {
    if (len < 3) throw ParseError("cycle needs length >= 3");
    std::vector<std::vector<std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < len; ++i) edges.push_back({i, (i + 1) % len});
    return Hypergraph(len, 2, std::move(edges));
}

inline Hypergraph complete_graph(std::uint32_t n) {
    std::vector<std::vector<std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) edges.push_back({i, j});
    return Hypergraph(n, 2, std::move(edges));
}

// every edge replaced by a path of length 2 through a fresh vertex
inline Hypergraph one_subdivision(const Hypergraph& H) {
    if (H.uniformity != 2) throw NotAGraph("subdivision needs a graph");
    std::uint32_t d = H.vertex_count;
    std::vector<std::vector<std::uint32_t>> edges;
    for (std::uint32_t e = 0; e < H.edge_count(); ++e) {
        edges.push_back({H.edges[e][0], d + e});
        edges.push_back({H.edges[e][1], d + e});
    }
    return Hypergraph(d + static_cast<std::uint32_t>(H.edge_count()), 2, std::move(edges));
}

// vertices {x0, x1, y0, y1, z0, z1}, all eight edges {x_i, y_j, z_k}
inline Hypergraph octahedron_3graph() {
    std::vector<std::vector<std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < 2; ++i)
        for (std::uint32_t j = 0; j < 2; ++j)
            for (std::uint32_t l = 0; l < 2; ++l) edges.push_back({i, 2 + j, 4 + l});
    return Hypergraph(6, 3, std::move(edges));
}

// ---------------------------------------------------------------------------
// Text format.  Line 1: "d r"; then one edge per line as r vertex indices,
// 1-based.  '#' lines and blank lines are skipped.

inline Hypergraph parse_hypergraph(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    long long d = -1, r = -1;
    std::vector<std::vector<std::uint32_t>> edges;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!detail::data_line(line)) continue;
        auto vals = detail::parse_ints(line, line_no);
        if (!have_header) {
            if (vals.size() != 2) throw ParseError("header must be 'd r'", line_no);
            d = vals[0];
            r = vals[1];
            if (d < 1 || r < 1) throw ParseError("need d >= 1 and r >= 1", line_no);
            have_header = true;
            continue;
        }
        if (vals.size() != static_cast<std::size_t>(r))
            throw ParseError("edge must list exactly " + std::to_string(r) + " vertices",
                             line_no);
        std::vector<std::uint32_t> e;
        for (long long v : vals) {
            if (v < 1 || v > d) throw ParseError("vertex index out of range", line_no);
            e.push_back(static_cast<std::uint32_t>(v - 1));
        }
        edges.push_back(std::move(e));
    }
    if (!have_header) throw ParseError("empty hypergraph file", line_no);
    return Hypergraph(static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(r),
                      std::move(edges));
}

inline Hypergraph parse_hypergraph_text(const std::string& text) {
    std::istringstream is(text);
    return parse_hypergraph(is);
}

inline void serialize_hypergraph(const Hypergraph& H, std::ostream& out) {
    out << H.vertex_count << ' ' << H.uniformity << '\n';
    for (const auto& e : H.edges) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i) out << ' ';
            out << e[i] + 1;
        }
        out << '\n';
    }
}

}  // namespace normsys
