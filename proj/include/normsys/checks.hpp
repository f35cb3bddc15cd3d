#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "normsys/density.hpp"
#include "normsys/linsys_ops.hpp"
#include "normsys/rng.hpp"

namespace normsys {

enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        default: return "inconclusive";
    }
}

// Builds a table from finitely many Fourier coefficients.  Coefficients at
// the same frequency accumulate.
inline FunctionOnG from_sparse_spectrum(const Group& g,
                                        const std::vector<std::pair<std::uint64_t, cplx>>& coef) {
    SpectrumOnG s(g);
    for (const auto& [xi, c] : coef) s[xi] += c;
    return inverse_fourier(s);
}

// ---------------------------------------------------------------------------
// Exact structural checks

struct TranslationInvariance {
    bool pass = false;
    std::vector<FqScalar> row_sums;          // per-row coefficient sums
    bool fibers_checked = false;             // solution fibers counted on n=1
    bool fibers_uniform = false;             // every |{x in Sol : x_i = v}| equal
};

inline TranslationInvariance check_translation_invariance(const LinearSystem& L,
                                                          const Budgets& budgets = Budgets{}) {
    const Fq& F = L.field();
    TranslationInvariance out;
    out.pass = true;
    for (std::size_t i = 0; i < L.m(); ++i) {
        FqScalar s = 0;
        for (std::size_t j = 0; j < L.k(); ++j) s = F.add(s, L.matrix().at(i, j));
        out.row_sums.push_back(s);
        if (s != 0) out.pass = false;
    }
    // count solution fibers over G = F_q (n = 1) when that stays small
    std::uint64_t sol = 1;
    bool fits = true;
    for (std::size_t i = 0; i + L.m() < L.k() + 0u; ++i) {
        if (sol > 200'000 / F.q()) {
            fits = false;
            break;
        }
        sol *= F.q();
    }
    if (fits && L.m() > 0) {
        Group g(F.q(), 1, budgets.max_table);
        const FqMatrix& K = L.kernel();
        std::vector<std::vector<std::uint64_t>> fiber(L.k(),
                                                      std::vector<std::uint64_t>(F.q(), 0));
        std::vector<FqScalar> v(L.k() - L.m(), 0);
        for (std::uint64_t it = 0; it < sol; ++it) {
            for (std::size_t j = 0; j < L.k(); ++j) {
                FqScalar x = 0;
                for (std::size_t c = 0; c < v.size(); ++c)
                    x = F.add(x, F.mul(K.at(j, c), v[c]));
                ++fiber[j][x];
            }
            if (it + 1 == sol) break;
            for (std::size_t d = 0;; ++d) {
                if (++v[d] < F.q()) break;
                v[d] = 0;
            }
        }
        out.fibers_checked = true;
        out.fibers_uniform = true;
        for (const auto& row : fiber)
            for (std::uint64_t cnt : row)
                if (cnt * F.q() != sol) out.fibers_uniform = false;
    }
    return out;
}

struct ZeroColumnCheck {
    bool pass = false;
    std::optional<std::size_t> zero_column;  // 0-based witness
};

inline ZeroColumnCheck check_zero_column(const LinearSystem& L) {
    ZeroColumnCheck out;
    out.pass = true;
    for (std::size_t j = 0; j < L.k(); ++j)
        if (L.matrix().col_is_zero(j)) {
            out.pass = false;
            out.zero_column = j;
            break;
        }
    return out;
}

// ---------------------------------------------------------------------------
// Odd-girth falsifier.  When the least support size l of a nonzero row-space
// vector is odd, the function f(x) = 1 - alpha * sum_i (e(a_i g x) + e(-a_i g x))
// built from a minimum-support vector's coefficients has mean exactly 1 while
// t_L(f, ..., f) = 1 - (positive multiple of alpha^l) + higher order, so a
// small alpha certifies a mean-1 non-negative function with t < 1.

inline FunctionOnG odd_girth_function(const LinearSystem& L, const std::vector<FqScalar>& v,
                                      double alpha, const Budgets& budgets = Budgets{}) {
    Group g(L.q(), 1, budgets.max_table);
    const std::uint64_t gamma = 1;
    std::vector<std::pair<std::uint64_t, cplx>> coef{{0, 1.0}};
    std::set<std::uint64_t> freqs;
    for (FqScalar a : v) {
        if (a == 0) continue;
        freqs.insert(g.scalar_mul(a, gamma));
        freqs.insert(g.neg(g.scalar_mul(a, gamma)));
    }
    for (std::uint64_t xi : freqs) coef.push_back({xi, -alpha});
    return from_sparse_spectrum(g, coef);
}

struct OddGirthFalsifier {
    std::size_t girth = 0;
    double alpha = 0.0;
    double t_value = 0.0;
    double mean_value = 0.0;
    std::optional<FunctionOnG> witness;  // always set on return
};

inline OddGirthFalsifier odd_girth_falsifier(const LinearSystem& L, double margin = 1e-9,
                                             const Budgets& budgets = Budgets{}) {
    OddGirthFalsifier out;
    RowSpaceProfile profile = row_space_profile(L, budgets.max_rowspace);
    out.girth = profile.girth;
    if (profile.girth == 0 || profile.girth % 2 == 0)
        throw NotApplicable("odd-girth construction needs odd girth, got " +
                            std::to_string(profile.girth));
    if (!L.translation_invariant())
        throw NotApplicable("odd-girth construction needs a translation-invariant system");
    const std::vector<FqScalar>& v = profile.mu.front();
    double cap = 1.0 / (2.0 * static_cast<double>(profile.girth));  // keeps f >= 0
    for (double alpha = std::min(0.5, cap); alpha > 1e-6; alpha *= 0.5) {
        FunctionOnG f = odd_girth_function(L, v, alpha, budgets);
        double t = t_density(L, f, budgets).real();
        if (t < 1.0 - margin) {
            out.alpha = alpha;
            out.t_value = t;
            out.mean_value = mean(f).real();
            out.witness = std::move(f);
            return out;
        }
    }
    throw SearchFailed("alpha sweep found no t below 1 - " + std::to_string(margin) +
                       " at girth " + std::to_string(profile.girth));
}

// ---------------------------------------------------------------------------
// Schatten falsifier.  A minimum-support row-space vector whose nonzero
// entries cannot be arranged as equally many a's and -a's yields, for small
// epsilon and a well-chosen unimodular z, a tuple of positive functions
// violating t_L(f_1, ..., f_l, 1, ..., 1) <= prod_i ||f_i||_L.  epsilon runs
// over a geometric sweep; z over a 360-point grid on the unit circle, then a
// tenfold-finer grid around the best point (z = 1 in characteristic 2).
// Throws NotApplicable when every minimum-support vector is Schatten and
// SearchFailed when no grid point certifies, so a return always carries a
// violation.

struct SchattenFalsifier {
    std::vector<FqScalar> vector_used;  // the non-Schatten minimum-support vector
    double epsilon = 0.0;
    cplx z = 0.0;
    double lhs = 0.0;         // rainbow density at the witness tuple
    double rhs = 0.0;         // product of the slots' norms
    std::vector<FunctionOnG> tuple;
};

namespace detail {

inline std::vector<FunctionOnG> schatten_tuple(const LinearSystem& L,
                                              const std::vector<FqScalar>& v, double eps, cplx z,
                                              const Budgets& budgets) {
    Group g(L.q(), 1, budgets.max_table);
    const std::uint64_t gamma = 1;
    std::vector<FunctionOnG> fs;
    fs.reserve(L.k());
    std::size_t idx = 0;  // 1-based position within the support
    for (std::size_t j = 0; j < L.k(); ++j) {
        if (v[j] == 0) {
            fs.push_back(constant(g, 1.0));
            continue;
        }
        ++idx;
        std::uint64_t base = g.scalar_mul(v[j], gamma);
        std::uint64_t plus = idx % 2 == 0 ? base : g.neg(base);   // (-1)^idx * a_idx * gamma
        std::uint64_t minus = g.neg(plus);
        fs.push_back(from_sparse_spectrum(
            g, {{0, 1.0}, {plus, eps * z}, {minus, eps * std::conj(z)}}));
    }
    return fs;
}

}  // namespace detail

inline SchattenFalsifier schatten_falsifier(const LinearSystem& L, double cert_margin = 1e-6,
                                            const Budgets& budgets = Budgets{}) {
    SchattenFalsifier out;
    RowSpaceProfile profile = row_space_profile(L, budgets.max_rowspace);
    auto bad = std::find_if(profile.mu.begin(), profile.mu.end(), [&](const auto& v) {
        return !is_schatten_vector(L.field(), v).is_schatten;
    });
    if (profile.girth == 0 || bad == profile.mu.end())
        throw NotApplicable("every minimum-support vector is Schatten");
    if (!L.translation_invariant())
        throw NotApplicable("construction needs a translation-invariant system");
    out.vector_used = *bad;

    auto ratio_at = [&](double eps, cplx z) {
        std::vector<FunctionOnG> fs = detail::schatten_tuple(L, *bad, eps, z, budgets);
        double lhs = t_fourier(L, fs, budgets).real();
        double rhs = 1.0;
        for (std::size_t j = 0; j < L.k(); ++j)
            if (out.vector_used[j] != 0) rhs *= norm_L(L, fs[j], budgets);
        return std::tuple<double, double, double>(rhs > 0 ? lhs / rhs : 0.0, lhs, rhs);
    };

    const double pi = std::numbers::pi;
    std::vector<double> eps_sweep{0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625};
    double best_ratio = 0.0, best_eps = 0.0, best_theta = 0.0;
    auto consider = [&](double eps, double theta) {
        auto [r, lhs, rhs] = ratio_at(eps, std::polar(1.0, theta));
        if (r > best_ratio) {
            best_ratio = r;
            best_eps = eps;
            best_theta = theta;
        }
    };
    if (L.q() == 2) {
        for (double eps : eps_sweep) consider(eps, 0.0);
    } else {
        for (double eps : eps_sweep)
            for (int step = 0; step < 360; ++step) consider(eps, 2.0 * pi * step / 360.0);
        double centre = best_theta;
        for (double eps : eps_sweep)
            for (int step = -18; step <= 18; ++step)
                consider(eps, centre + 2.0 * pi * step / 3600.0);
    }

    if (best_ratio <= 1.0 + cert_margin)
        throw SearchFailed("no grid point violated the rainbow bound; best ratio " +
                           std::to_string(best_ratio) + " at eps " + std::to_string(best_eps));
    out.epsilon = best_eps;
    out.z = std::polar(1.0, best_theta);
    out.tuple = detail::schatten_tuple(L, *bad, best_eps, out.z, budgets);
    // re-verify on the emitted tuple with both oracles
    double direct = t_direct(L, out.tuple, budgets).real();
    double spectral = t_fourier(L, out.tuple, budgets).real();
    out.lhs = direct;
    double rhs = 1.0;
    for (std::size_t j = 0; j < L.k(); ++j)
        if (out.vector_used[j] != 0) rhs *= norm_L(L, out.tuple[j], budgets);
    out.rhs = rhs;
    if (std::abs(direct - spectral) > 1e-9 * std::max(1.0, std::abs(direct)) ||
        direct <= rhs * (1.0 + cert_margin))
        throw SearchFailed("grid candidate failed re-verification: lhs " + std::to_string(direct) +
                           " vs rhs " + std::to_string(rhs));
    return out;
}

// ---------------------------------------------------------------------------
// Variable transitivity: in a weakly norming system all one-variable
// projections are isomorphic, so any non-isomorphic pair of deletions is a
// disproof.  Witness pair is 0-based.

struct TransitivityCheck {
    Verdict verdict = Verdict::inconclusive;
    std::optional<std::pair<std::size_t, std::size_t>> witness;
};

inline TransitivityCheck check_variable_transitivity(const LinearSystem& L,
                                                     const Budgets& budgets = Budgets{}) {
    TransitivityCheck out;
    if (L.k() < 2 || L.k() > 13) return out;  // deletions must stay canonicalisable
    try {
        FqMatrix first = canonical_form(delete_variable(L, 0), budgets.max_perm_nodes).matrix;
        for (std::size_t j = 1; j < L.k(); ++j) {
            FqMatrix other = canonical_form(delete_variable(L, j), budgets.max_perm_nodes).matrix;
            if (!(other == first)) {
                out.verdict = Verdict::fail;
                out.witness = {std::size_t{0}, j};
                return out;
            }
        }
        out.verdict = Verdict::pass;
    } catch (const BudgetExceeded&) {
        out.verdict = Verdict::inconclusive;
    }
    return out;
}

// Components of a weakly norming system are pairwise isomorphic (free
// variables aside, but those already fail the zero-column check).

struct ComponentCheck {
    Verdict verdict = Verdict::inconclusive;
    std::size_t component_count = 0;
    std::optional<std::pair<std::size_t, std::size_t>> witness;  // part indices
};

inline ComponentCheck check_component_isomorphism(const LinearSystem& L,
                                                  const Budgets& budgets = Budgets{}) {
    ComponentCheck out;
    try {
        ComponentSplit split = components(L, budgets.max_rowspace);
        out.component_count = split.parts.size();
        std::vector<std::size_t> real_parts;  // skip free-variable singletons
        for (std::size_t p = 0; p < split.parts.size(); ++p)
            if (split.systems[p].m() > 0) real_parts.push_back(p);
        out.verdict = Verdict::pass;
        for (std::size_t a = 1; a < real_parts.size(); ++a) {
            if (!isomorphic(split.systems[real_parts[0]], split.systems[real_parts[a]],
                            budgets.max_perm_nodes)) {
                out.verdict = Verdict::fail;
                out.witness = {real_parts[0], real_parts[a]};
                return out;
            }
        }
    } catch (const BudgetExceeded&) {
        out.verdict = Verdict::inconclusive;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rank <= 2 classifier.  Up to isomorphism the weakly norming systems of rank
// at most 2 are: a single balanced equation; x_1 = x_2 = x_3; two disjoint
// copies of one balanced equation; and a balanced equation repeated across
// three blocks.  Everything else of rank <= 2 is not weakly norming.

enum class Rank2Tag {
    single_schatten,
    triple_equal,
    disjoint_pair,
    triple_schatten,
    not_weakly_norming,
    unknown
};

inline const char* to_string(Rank2Tag t) {
    switch (t) {
        case Rank2Tag::single_schatten: return "single_schatten";
        case Rank2Tag::triple_equal: return "L3_triple_equal";
        case Rank2Tag::disjoint_pair: return "disjoint_pair";
        case Rank2Tag::triple_schatten: return "triple_schatten";
        case Rank2Tag::not_weakly_norming: return "not_weakly_norming";
        default: return "unknown";
    }
}

struct Rank2Classification {
    Rank2Tag tag = Rank2Tag::unknown;
    std::size_t r = 0;  // block size parameter where meaningful
    // column map template -> L certifying the isomorphism, when one was found
    std::optional<std::vector<std::size_t>> witness_perm;
};

inline FqMatrix triple_equal_template(const Fq& F) {
    return FqMatrix(F, {{1, -1, 0}, {0, 1, -1}});
}

inline FqMatrix disjoint_pair_template(const Fq& F, std::size_t r) {
    FqMatrix A(F, 2, 4 * r);
    for (std::size_t c = 0; c < r; ++c) {
        A.at(0, c) = 1;
        A.at(0, r + c) = F.neg(1);
        A.at(1, 2 * r + c) = 1;
        A.at(1, 3 * r + c) = F.neg(1);
    }
    return A;
}

inline FqMatrix triple_schatten_template(const Fq& F, std::size_t r) {
    FqMatrix A(F, 2, 6 * r);
    for (std::size_t c = 0; c < 2 * r; ++c) {
        FqScalar sign = c % 2 == 0 ? 1 : F.neg(1);
        A.at(0, c) = sign;
        A.at(0, 2 * r + c) = F.neg(sign);
        A.at(1, 2 * r + c) = sign;
        A.at(1, 4 * r + c) = F.neg(sign);
    }
    return A;
}

inline Rank2Classification classify_rank_le2(const LinearSystem& L,
                                             const Budgets& budgets = Budgets{}) {
    if (L.m() > 2) throw RankTooHigh("classifier covers rank <= 2 only");
    Rank2Classification out;
    if (L.m() == 0) return out;  // unconstrained: outside the classified families

    if (L.m() == 1) {
        std::vector<FqScalar> row = L.matrix().row(0);
        if (std::count(row.begin(), row.end(), 0u) > 0) {
            out.tag = Rank2Tag::not_weakly_norming;  // free variable in one equation
            return out;
        }
        SchattenTest t = is_schatten_vector(L.field(), row);
        out.tag = t.is_schatten ? Rank2Tag::single_schatten : Rank2Tag::not_weakly_norming;
        if (t.is_schatten) out.r = L.k() / 2;
        return out;
    }

    try {
        CanonicalForm cl = canonical_form(L, budgets.max_perm_nodes);
        // when canonical forms agree, template column perm_t[i] plays the role
        // of L's column perm_l[i]; record the induced template -> L column map
        auto matches = [&](const FqMatrix& tpl) {
            CanonicalForm ct = canonical_form(LinearSystem(tpl), budgets.max_perm_nodes);
            if (!(ct.matrix == cl.matrix)) return false;
            std::vector<std::size_t> map(L.k());
            for (std::size_t i = 0; i < L.k(); ++i) map[ct.permutation[i]] = cl.permutation[i];
            out.witness_perm = std::move(map);
            return true;
        };
        if (L.k() == 3 && matches(triple_equal_template(L.field()))) {
            out.tag = Rank2Tag::triple_equal;
            return out;
        }
        if (L.k() % 4 == 0 && matches(disjoint_pair_template(L.field(), L.k() / 4))) {
            out.tag = Rank2Tag::disjoint_pair;
            out.r = L.k() / 4;
            return out;
        }
        if (L.k() % 6 == 0 && matches(triple_schatten_template(L.field(), L.k() / 6))) {
            out.tag = Rank2Tag::triple_schatten;
            out.r = L.k() / 6;
            return out;
        }
        out.tag = Rank2Tag::not_weakly_norming;
    } catch (const BudgetExceeded&) {
        out.tag = Rank2Tag::unknown;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sampling searches.  Neither search certifies a positive property; they
// hunt for violations and report the best candidate seen.

struct HolderSearchOutcome {
    double best_ratio = 0.0;  // |t(tuple)| / prod ||f_i||
    bool certified = false;   // violation re-verified with both oracles
    std::vector<FunctionOnG> tuple;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
};

// ratio of the rainbow density to the product of norms; 0 when a norm
// underflows
inline double holder_ratio(const LinearSystem& L, const std::vector<FunctionOnG>& fs,
                           const Budgets& budgets = Budgets{}) {
    double denom = 1.0;
    for (const auto& f : fs) {
        double nm = norm_L(L, f, budgets);
        if (nm < 1e-12) return 0.0;
        denom *= nm;
    }
    return std::abs(t_fourier(L, fs, budgets)) / denom;
}

// `nonneg` restricts the hunt to non-negative tuples (the weakly-norming
// inequality); otherwise tuples are real-valued (the semi-norming one).
// `climb` adds coordinate-descent refinement after each random start;
// `start` optionally seeds trial 0 (e.g. with a balance-falsifier tuple).
inline HolderSearchOutcome holder_search(const LinearSystem& L, const Group& g, std::size_t trials,
                                         Rng rng, bool nonneg = true, bool climb = true,
                                         std::optional<std::vector<FunctionOnG>> start = {},
                                         const Budgets& budgets = Budgets{}) {
    HolderSearchOutcome out;
    out.seed = rng.seed();
    out.trials = trials;
    double lo = nonneg ? 0.0 : -1.0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        std::vector<FunctionOnG> fs;
        if (trial == 0 && start) {
            fs = *start;
        } else {
            for (std::size_t j = 0; j < L.k(); ++j) fs.push_back(random_real(g, rng, lo, 1.0));
        }
        double cur = holder_ratio(L, fs, budgets);
        if (climb) {
            double step = 0.25;
            for (int sweep = 0; sweep < 5; ++sweep, step *= 0.5) {
                for (std::size_t j = 0; j < L.k(); ++j)
                    for (std::uint64_t x = 0; x < g.size(); ++x)
                        for (double dir : {+1.0, -1.0}) {
                            cplx old = fs[j][x];
                            double moved = old.real() + dir * step;
                            if (nonneg && moved < 0.0) continue;
                            fs[j][x] = moved;
                            double cand = holder_ratio(L, fs, budgets);
                            if (cand > cur)
                                cur = cand;
                            else
                                fs[j][x] = old;
                        }
            }
        }
        if (cur > out.best_ratio) {
            out.best_ratio = cur;
            out.tuple = fs;
        }
    }
    if (out.best_ratio > 1.0 + 1e-6 && !out.tuple.empty()) {
        double denom = 1.0;
        for (const auto& f : out.tuple) denom *= norm_L(L, f, budgets);
        double direct = std::abs(t_direct(L, out.tuple, budgets));
        double spectral = std::abs(t_fourier(L, out.tuple, budgets));
        out.certified = std::abs(direct - spectral) <= 1e-9 * std::max(1.0, direct) &&
                        denom > 0 && direct / denom > 1.0 + 1e-6;
    }
    return out;
}

struct SidorenkoSearchOutcome {
    double min_gap = 0.0;  // most negative t - (mean)^k seen
    bool certified = false;
    std::optional<FunctionOnG> witness;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
};

namespace detail {

// clip to >= 0 and rescale so the mean is exactly the table average of 1
inline void renormalise_mean(FunctionOnG& f) {
    double total = 0.0;
    for (auto& x : f.v) {
        x = std::max(0.0, x.real());
        total += x.real();
    }
    if (total <= 0.0) {
        for (auto& x : f.v) x = 1.0;
        return;
    }
    double scale = static_cast<double>(f.v.size()) / total;
    for (auto& x : f.v) x *= scale;
}

}  // namespace detail

// Minimises t_L(f,...,f) - (E f)^k over non-negative mean-one f.  Starts from
// random tables plus, when the girth is odd, the mean-one falsifier family.
inline SidorenkoSearchOutcome sidorenko_search(const LinearSystem& L, const Group& g,
                                               std::size_t trials, Rng rng,
                                               const Budgets& budgets = Budgets{}) {
    SidorenkoSearchOutcome out;
    out.seed = rng.seed();
    out.trials = trials;
    auto gap_of = [&](const FunctionOnG& f) {
        return t_density(L, f, budgets).real() - 1.0;  // mean is pinned to 1
    };
    std::vector<FunctionOnG> starts;
    if (g.n() == 1) {
        RowSpaceProfile profile = row_space_profile(L, budgets.max_rowspace);
        if (profile.girth % 2 == 1 && profile.girth > 0) {
            double cap = 1.0 / (2.0 * static_cast<double>(profile.girth));
            for (double alpha : {cap, cap / 2, cap / 4})
                starts.push_back(odd_girth_function(L, profile.mu.front(), alpha, budgets));
        }
    }
    while (starts.size() < trials) starts.push_back(random_real(g, rng, 0.0, 1.0));
    bool first = true;
    for (auto& f0 : starts) {
        FunctionOnG f = f0;
        detail::renormalise_mean(f);
        double cur = gap_of(f);
        double step = 0.25;
        for (int sweep = 0; sweep < 5; ++sweep, step *= 0.5) {
            for (std::uint64_t x = 0; x < g.size(); ++x)
                for (double dir : {+1.0, -1.0}) {
                    FunctionOnG cand = f;
                    cand[x] += dir * step;
                    detail::renormalise_mean(cand);
                    double val = gap_of(cand);
                    if (val < cur) {
                        cur = val;
                        f = cand;
                    }
                }
        }
        if (first || cur < out.min_gap) {
            out.min_gap = cur;
            out.witness = f;
            first = false;
        }
    }
    if (out.min_gap < -1e-9 && out.witness) {
        double direct = t_direct(L, std::vector<FunctionOnG>(L.k(), *out.witness), budgets).real();
        double spectral =
            t_fourier(L, std::vector<FunctionOnG>(L.k(), *out.witness), budgets).real();
        out.certified = std::abs(direct - spectral) <= 1e-9 * std::max(1.0, std::abs(direct)) &&
                        direct - 1.0 < -1e-9;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Forcing witness for a single paired equation (a_1, -a_1, ..., a_r, -a_r):
// when two pair classes differ, the mean-one function with spectrum 1/2 at
// +-gamma has t_L(f) = (E f)^k exactly while staying far from constant.
// `found == false` means the pair classes were exhausted without finding two
// distinct ones, which is consistent with the equation being forcing.

struct ForcingWitness {
    bool found = false;
    std::size_t pair_classes = 0;
    std::optional<FunctionOnG> witness;
    double t_value = 0.0;
    double mean_pow = 0.0;   // (E f)^k
    double distance = 0.0;   // max |f - E f|
};

inline ForcingWitness forcing_witness_single_eq(const LinearSystem& L,
                                                const Budgets& budgets = Budgets{}) {
    if (L.m() != 1) throw NotApplicable("forcing witness covers single equations only");
    if (L.k() % 2 != 0 || !L.translation_invariant())
        throw NotApplicable("equation is not of paired form");
    const Fq& F = L.field();
    std::vector<FqScalar> row = L.matrix().row(0);
    std::map<FqScalar, std::size_t> count;
    for (FqScalar a : row) {
        if (a == 0) throw NotApplicable("equation is not of paired form");  // zero column
        ++count[std::min(a, F.neg(a))];
    }
    for (const auto& [cls, c] : count) {
        if (F.q() == 2 || cls == F.neg(cls)) {
            if (c % 2 != 0) throw NotApplicable("equation is not of paired form");
        } else {
            std::size_t pos = std::count(row.begin(), row.end(), cls);
            std::size_t neg = std::count(row.begin(), row.end(), F.neg(cls));
            if (pos != neg)  // cannot split into (a, -a) pairs
                throw NotApplicable("equation is not of paired form");
        }
    }
    ForcingWitness out;
    out.pair_classes = count.size();
    if (count.size() < 2) return out;  // exhausted: every pair alike
    Group g(F.q(), 1, budgets.max_table);
    const std::uint64_t gamma = 1;
    FunctionOnG f = from_sparse_spectrum(g, {{0, 1.0}, {gamma, 0.5}, {g.neg(gamma), 0.5}});
    out.found = true;
    out.t_value = t_direct(L, std::vector<FunctionOnG>(L.k(), f), budgets).real();
    double m = mean(f).real();
    out.mean_pow = std::pow(m, static_cast<double>(L.k()));
    double dist = 0.0;
    for (cplx x : f.v) dist = std::max(dist, std::abs(x - m));
    out.distance = dist;
    out.witness = std::move(f);
    return out;
}

// gap data for one candidate function: how far t sits above (E f)^k and how
// far f sits from constant
struct ForcingGap {
    double gap = 0.0;
    double distance = 0.0;
};

inline ForcingGap forcing_gap(const LinearSystem& L, const FunctionOnG& f,
                              const Budgets& budgets = Budgets{}) {
    ForcingGap out;
    cplx m = mean(f);
    cplx t = t_density(L, f, budgets);
    // (E f)^k of a real-valued candidate; the sign matters for odd k
    out.gap = t.real() - std::pow(m.real(), static_cast<double>(L.k()));
    double dist = 0.0;
    for (cplx x : f.v) dist = std::max(dist, std::abs(x - m));
    out.distance = dist;
    return out;
}

// ---------------------------------------------------------------------------
// Conjugation screen: for each of the 2^k conjugation patterns, probe the
// triangle inequality of |t|^(1/k) with character pairs and random complex
// functions.  A violation eliminates the pattern; survivors are reported as
// such, never as certified norms.

struct AlphaPatternResult {
    std::vector<int> alpha;
    bool survived = true;
    std::size_t violations = 0;
    double worst_excess = 0.0;  // max of lhs - rhs over probes
    double max_imag_single = 0.0;  // max |Im t(f,...,f)| over single probes
};

struct AlphaScreenOutcome {
    std::vector<AlphaPatternResult> patterns;
    std::uint64_t seed = 0;
};

inline AlphaScreenOutcome alpha_screen(const LinearSystem& L, const Group& g, std::size_t trials,
                                       Rng rng, const Budgets& budgets = Budgets{}) {
    if (L.k() > 12) throw BudgetExceeded("conjugation screen limited to k <= 12");
    AlphaScreenOutcome out;
    out.seed = rng.seed();
    const double invk = 1.0 / static_cast<double>(L.k());
    for (std::uint32_t bits = 0; bits < (1u << L.k()); ++bits) {
        AlphaPatternResult res;
        res.alpha.resize(L.k());
        for (std::size_t j = 0; j < L.k(); ++j) res.alpha[j] = (bits >> j) & 1;
        auto functional = [&](const FunctionOnG& f) {
            return t_conjugated(L, res.alpha, std::vector<FunctionOnG>(L.k(), f), budgets);
        };
        auto probe = [&](const FunctionOnG& f, const FunctionOnG& h) {
            FunctionOnG sum(g);
            for (std::uint64_t x = 0; x < g.size(); ++x) sum[x] = f[x] + h[x];
            double lhs = std::pow(std::abs(functional(sum)), invk);
            double rhs = std::pow(std::abs(functional(f)), invk) +
                         std::pow(std::abs(functional(h)), invk);
            double excess = lhs - rhs;
            res.worst_excess = std::max(res.worst_excess, excess);
            if (excess > 1e-9) {
                res.survived = false;
                ++res.violations;
            }
        };
        // structured probes: pairs of characters, which expose asymmetric
        // patterns immediately
        for (std::uint64_t g1 = 0; g1 < std::min<std::uint64_t>(g.size(), 4); ++g1)
            for (std::uint64_t g2 = 0; g2 < std::min<std::uint64_t>(g.size(), 4); ++g2)
                probe(character(g, g1), character(g, g2));
        Rng local = rng.fork(bits);
        for (std::size_t t = 0; t < trials; ++t) {
            FunctionOnG f = random_complex(g, local);
            res.max_imag_single =
                std::max(res.max_imag_single, std::abs(functional(f).imag()));
            probe(f, random_complex(g, local));
        }
        out.patterns.push_back(std::move(res));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cross-check of the rowspace-count statistic: with f_j the character at the
// j-th coordinate of L^T gamma, the density t_M(f_1, ..., f_k) counts the
// frequency tuples xi with M^T xi = L^T gamma; summed over all gamma this is
// |im(L^T) meet im(M^T)|^n.

struct IsoStatisticOutcome {
    bool per_gamma_equal = true;     // every sampled density matched its count
    bool aggregate_equal = false;    // sum of counts == image_intersection_count
    std::size_t samples = 0;
    std::uint64_t aggregate = 0;
    std::uint64_t image_count = 0;
};

inline IsoStatisticOutcome isomorphism_statistic_crosscheck(const LinearSystem& L,
                                                            const LinearSystem& M, const Group& g,
                                                            std::size_t samples, Rng rng,
                                                            const Budgets& budgets = Budgets{}) {
    if (L.q() != M.q() || L.k() != M.k() || L.m() != M.m() || g.q() != L.q())
        throw DimensionMismatch("crosscheck needs matching m x k systems and group");
    const std::size_t m = L.m(), k = L.k();
    std::uint64_t total = detail::checked_pow(g.size(), m, budgets.max_enum,
                                              "gamma enumeration exceeds budget");
    if (total > 100'000)  // the aggregate below walks all gamma x xi pairs
        throw BudgetExceeded("crosscheck enumeration exceeds budget");

    auto image_of = [&](const FqMatrix& A, const std::vector<std::uint64_t>& gam) {
        std::vector<std::uint64_t> w(k, 0);
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < m; ++i)
                if (A.at(i, j) != 0) w[j] = g.add(w[j], g.scalar_mul(A.at(i, j), gam[i]));
        return w;
    };
    auto unpack = [&](std::uint64_t idx) {
        std::vector<std::uint64_t> gam(m);
        for (std::size_t i = 0; i < m; ++i) {
            gam[i] = idx % g.size();
            idx /= g.size();
        }
        return gam;
    };
    // histogram of M^T xi over all xi; count_for is then a lookup
    std::map<std::vector<std::uint64_t>, std::uint64_t> histo;
    for (std::uint64_t xi = 0; xi < total; ++xi) ++histo[image_of(M.matrix(), unpack(xi))];
    auto count_for = [&](const std::vector<std::uint64_t>& w) -> std::uint64_t {
        auto it = histo.find(w);
        return it == histo.end() ? 0 : it->second;
    };

    IsoStatisticOutcome out;
    out.samples = samples;
    for (std::uint64_t gi = 0; gi < total; ++gi)
        out.aggregate += count_for(image_of(L.matrix(), unpack(gi)));
    out.image_count = image_intersection_count(L, M, g.n());
    out.aggregate_equal = out.aggregate == out.image_count;

    for (std::size_t s = 0; s < samples; ++s) {
        std::vector<std::uint64_t> gam = unpack(rng.below(total));
        std::vector<std::uint64_t> w = image_of(L.matrix(), gam);
        std::vector<FunctionOnG> fs;
        fs.reserve(k);
        for (std::size_t j = 0; j < k; ++j) fs.push_back(character(g, w[j]));
        cplx t = t_direct(M, fs, budgets);
        double as_int = std::round(t.real());
        if (std::abs(t.imag()) > 1e-7 || std::abs(t.real() - as_int) > 1e-7 ||
            static_cast<std::uint64_t>(as_int) != count_for(w))
            out.per_gamma_equal = false;
    }
    return out;
}

}  // namespace normsys
