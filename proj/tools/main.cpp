// Command-line front end.  Subcommands wrap the library one-to-one; every
// randomized operation takes --seed and emits replayable JSON, so identical
// invocations produce byte-identical reports.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "normsys/normsys.hpp"

namespace ns = normsys;
using ns::ordered_json;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 1;
    double tol_rel = 1e-9;
    double tol_abs = 1e-12;
    ns::Budgets budgets;
    std::string format = "text";
    std::string out;

    bool json() const { return format == "json"; }
    ns::Tolerances tol() const { return {tol_rel, tol_abs}; }

    // stem used to derive witness-file names next to the report
    std::string witness_prefix() const {
        if (out.empty()) return "";
        const std::string suffix = ".json";
        if (out.size() > suffix.size() && out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0)
            return out.substr(0, out.size() - suffix.size());
        return out;
    }
};

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ns::ParseError("cannot open '" + path + "'");
    return in;
}

ns::LinearSystem load_system(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    return ns::parse_system(in);
}

ns::FunctionOnG load_function(const std::string& path, const GlobalOpts& g) {
    std::ifstream in = open_or_throw(path);
    return ns::parse_function(in, g.budgets.max_table);
}

ns::Hypergraph load_hypergraph(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    return ns::parse_hypergraph(in);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ns::ParseError("cannot write '" + path + "'");
    out << content;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(ns::cplx v) { return fmt(v.real()) + " + " + fmt(v.imag()) + "i"; }

// emit a report: stdout in the chosen format, plus --out as JSON
void emit(const GlobalOpts& g, const ordered_json& j, const std::string& text) {
    if (g.json())
        std::cout << ns::dump_report(j);
    else
        std::cout << text;
    if (!g.out.empty()) write_text_file(g.out, ns::dump_report(j));
}

ordered_json base_report(const GlobalOpts& g, const std::string& tool) {
    ordered_json j;
    j["schema"] = 1;
    j["tool"] = tool;
    j["seed"] = g.seed;
    return j;
}

// ---------------------------------------------------------------------------

int cmd_check(const GlobalOpts& g, const std::string& system_path) {
    ns::LinearSystem L = load_system(system_path);
    ns::CheckConfig cfg;
    cfg.seed = g.seed;
    cfg.tol = g.tol();
    cfg.budgets = g.budgets;
    int exit_code = 0;
    ordered_json report = ns::run_system_checks(L, cfg, g.witness_prefix(), exit_code);

    std::string text;
    text += "system: " + std::to_string(L.m()) + " x " + std::to_string(L.k()) + " over F_" +
            std::to_string(L.q()) + "\n";
    for (const auto& entry : report["checks"]) {
        std::string v = entry["verdict"];
        text += "[" + v + "] " + std::string(entry["name"]);
        if (entry.contains("details")) text += "  " + entry["details"].dump();
        if (entry.contains("note")) text += "  (" + std::string(entry["note"]) + ")";
        text += "\n";
    }
    text += "verdict: " + std::string(report["verdict"]) + "\n";
    emit(g, report, text);
    return exit_code;
}

int cmd_density(const GlobalOpts& g, const std::string& system_path,
                const std::vector<std::string>& fn_paths, const std::string& oracle) {
    ns::LinearSystem L = load_system(system_path);
    std::vector<ns::FunctionOnG> fs;
    for (const auto& p : fn_paths) fs.push_back(load_function(p, g));
    if (fs.size() == 1 && L.k() > 1) fs.assign(L.k(), fs.front());
    if (fs.size() != L.k())
        throw ns::DimensionMismatch("need 1 or k = " + std::to_string(L.k()) +
                                    " function files, got " + std::to_string(fn_paths.size()));

    ordered_json report = base_report(g, "density");
    report["oracle"] = oracle;
    std::string text;
    std::optional<ns::cplx> direct, spectral;
    if (oracle == "direct" || oracle == "both") {
        direct = ns::t_direct(L, fs, g.budgets);
        report["t_direct"] = {direct->real(), direct->imag()};
        text += "t_direct   = " + fmt(*direct) + "\n";
    }
    if (oracle == "fourier" || oracle == "both") {
        spectral = ns::t_fourier(L, fs, g.budgets);
        report["t_fourier"] = {spectral->real(), spectral->imag()};
        text += "t_fourier  = " + fmt(*spectral) + "\n";
    }
    int rc = 0;
    if (direct && spectral) {
        double disc = std::abs(*direct - *spectral);
        double bound = g.tol_rel * std::max(1.0, std::abs(*direct));
        report["discrepancy"] = disc;
        report["tolerance"] = bound;
        report["agree"] = disc <= bound;
        text += "discrepancy = " + fmt(disc) + " (tolerance " + fmt(bound) + ") " +
                (disc <= bound ? "ok" : "MISMATCH") + "\n";
        if (disc > bound) rc = 1;
    }
    ns::cplx t = direct ? *direct : *spectral;
    double nrm = std::pow(std::abs(t), 1.0 / static_cast<double>(L.k()));
    report["norm"] = nrm;
    text += "|t|^(1/k)  = " + fmt(nrm) + "\n";
    emit(g, report, text);
    return rc;
}

int cmd_cayley(const GlobalOpts& g, const std::string& hg_path, std::uint32_t q,
               const std::string& emit_path, std::size_t crosscheck, std::uint32_t n) {
    ns::Hypergraph H = load_hypergraph(hg_path);
    ns::HSystem hs = ns::build_h_system(H, q);
    const ns::LinearSystem& L = hs.system;

    ordered_json report = base_report(g, "cayley");
    report["hypergraph"] = {{"vertices", H.vertex_count},
                            {"edges", H.edge_count()},
                            {"uniformity", H.uniformity},
                            {"components", H.component_count()}};
    report["system"] = {{"q", L.q()}, {"m", L.m()}, {"k", L.k()},
                        {"matrix", ns::matrix_json(L.matrix())}};
    report["rank"] = L.m();

    std::string text;
    text += "hypergraph: " + std::to_string(H.vertex_count) + " vertices, " +
            std::to_string(H.edge_count()) + " edges, uniformity " +
            std::to_string(H.uniformity) + ", components " +
            std::to_string(H.component_count()) + "\n";
    text += "system: " + std::to_string(L.m()) + " x " + std::to_string(L.k()) + " over F_" +
            std::to_string(q) + " (rank " + std::to_string(L.m()) + ")\n";
    if (H.uniformity == 2) {
        long long cyc = static_cast<long long>(H.edge_count()) - H.vertex_count +
                        static_cast<long long>(H.component_count());
        report["cycle_rank"] = cyc;
        text += "|E| - |V| + components = " + std::to_string(cyc) + "\n";
    }

    int rc = 0;
    if (crosscheck > 0) {
        ns::Rng rng(g.seed);
        ns::Group grp(q, n, g.budgets.max_table);
        double worst = 0.0;
        for (std::size_t s = 0; s < crosscheck; ++s) {
            ns::FunctionOnG f = ns::random_real(grp, rng);
            ns::CayleyCrosscheck cc = ns::cayley_density_crosscheck(H, q, f, g.budgets);
            worst = std::max(worst, cc.discrepancy);
        }
        bool ok = worst <= g.tol_rel;
        report["crosscheck"] = {{"samples", crosscheck}, {"n", n},
                                {"worst_discrepancy", worst}, {"pass", ok}};
        text += "crosscheck: " + std::to_string(crosscheck) + " samples, worst discrepancy " +
                fmt(worst) + (ok ? " ok" : " MISMATCH") + "\n";
        if (!ok) rc = 1;
    }
    if (!emit_path.empty()) {
        std::ostringstream os;
        ns::serialize_matrix(L.matrix(), os);
        write_text_file(emit_path, os.str());
        text += "system written to " + emit_path + "\n";
        report["emitted"] = emit_path;
    }
    emit(g, report, text);
    return rc;
}

int cmd_classify(const GlobalOpts& g, const std::string& system_path) {
    ns::LinearSystem L = load_system(system_path);
    ns::Rank2Classification c = ns::classify_rank_le2(L, g.budgets);

    ordered_json report = base_report(g, "classify");
    report["tag"] = ns::to_string(c.tag);
    std::string text = std::string("tag: ") + ns::to_string(c.tag);
    if (c.r > 0) {
        report["r"] = c.r;
        text += " (r = " + std::to_string(c.r) + ")";
    }
    text += "\n";
    if (c.witness_perm) {
        ordered_json perm = ordered_json::array();
        for (std::size_t p : *c.witness_perm) perm.push_back(p + 1);
        report["witness_permutation"] = perm;
    }
    emit(g, report, text);
    return 0;
}

int cmd_falsify(const GlobalOpts& g, const std::string& method, const std::string& system_path,
                std::size_t trials, std::uint32_t n) {
    ns::LinearSystem L = load_system(system_path);
    ordered_json report = base_report(g, "falsify");
    report["method"] = method;
    std::string text;
    std::string prefix = g.witness_prefix();
    auto save_fn = [&](const std::string& label, const ns::FunctionOnG& f) {
        if (prefix.empty()) return;
        std::string path = prefix + "." + label + ".fn";
        std::ostringstream os;
        ns::serialize_function(f, os);
        write_text_file(path, os.str());
        report["witness_paths"].push_back(path);
        text += "witness written to " + path + "\n";
    };

    try {
        if (method == "odd-girth") {
            ns::OddGirthFalsifier r = ns::odd_girth_falsifier(L, g.tol_rel, g.budgets);
            report["found"] = true;
            report["girth"] = r.girth;
            report["alpha"] = r.alpha;
            report["t_value"] = r.t_value;
            report["mean"] = r.mean_value;
            text += "violation found: girth " + std::to_string(r.girth) + ", alpha " +
                    fmt(r.alpha) + "\n";
            text += "t = " + fmt(r.t_value) + " < 1 = (E f)^k with E f = " + fmt(r.mean_value) +
                    "\n";
            save_fn("odd_girth", *r.witness);
        } else if (method == "schatten") {
            ns::SchattenFalsifier r = ns::schatten_falsifier(L, 1e-6, g.budgets);
            report["found"] = true;
            ordered_json vec = ordered_json::array();
            for (ns::FqScalar x : r.vector_used) vec.push_back(x);
            report["vector"] = vec;
            report["epsilon"] = r.epsilon;
            report["z"] = {r.z.real(), r.z.imag()};
            report["lhs"] = r.lhs;
            report["rhs"] = r.rhs;
            text += "violation found: t = " + fmt(r.lhs) + " > " + fmt(r.rhs) +
                    " = product of norms\n";
            text += "epsilon " + fmt(r.epsilon) + ", z = " + fmt(r.z) + "\n";
            for (std::size_t j = 0; j < r.tuple.size(); ++j)
                save_fn("schatten.f" + std::to_string(j + 1), r.tuple[j]);
        } else if (method == "holder") {
            ns::Group grp(L.q(), n, g.budgets.max_table);
            ns::HolderSearchOutcome r =
                ns::holder_search(L, grp, trials, ns::Rng(g.seed), true, true, {}, g.budgets);
            report["found"] = r.certified;
            report["best_ratio"] = r.best_ratio;
            report["trials"] = r.trials;
            text += std::string(r.certified ? "violation found" : "no violation found") +
                    ": best ratio " + fmt(r.best_ratio) + " over " + std::to_string(r.trials) +
                    " trials\n";
            if (r.certified)
                for (std::size_t j = 0; j < r.tuple.size(); ++j)
                    save_fn("holder.f" + std::to_string(j + 1), r.tuple[j]);
            if (!r.certified) {
                emit(g, report, text);
                return 1;
            }
        } else if (method == "sidorenko") {
            ns::Group grp(L.q(), n, g.budgets.max_table);
            ns::SidorenkoSearchOutcome r =
                ns::sidorenko_search(L, grp, trials, ns::Rng(g.seed), g.budgets);
            report["found"] = r.certified;
            report["min_gap"] = r.min_gap;
            report["trials"] = r.trials;
            text += std::string(r.certified ? "violation found" : "no violation found") +
                    ": min gap " + fmt(r.min_gap) + " over " + std::to_string(r.trials) +
                    " trials\n";
            if (r.certified && r.witness) save_fn("sidorenko", *r.witness);
            if (!r.certified) {
                emit(g, report, text);
                return 1;
            }
        } else {  // forcing-witness
            ns::ForcingWitness r = ns::forcing_witness_single_eq(L, g.budgets);
            report["found"] = r.found;
            report["pair_classes"] = r.pair_classes;
            if (r.found) {
                report["t_value"] = r.t_value;
                report["mean_pow"] = r.mean_pow;
                report["distance"] = r.distance;
                text += "non-forcing witness found: t = " + fmt(r.t_value) + ", (E f)^k = " +
                        fmt(r.mean_pow) + ", max |f - E f| = " + fmt(r.distance) + "\n";
                save_fn("forcing", *r.witness);
            } else {
                report["status"] = "exhausted";
                text += "exhausted: " + std::to_string(r.pair_classes) +
                        " pair class(es), no separating pair (consistent with forcing)\n";
                emit(g, report, text);
                return 1;
            }
        }
    } catch (const ns::NotApplicable& e) {
        report["found"] = false;
        report["status"] = "not_applicable";
        report["reason"] = e.what();
        emit(g, report, std::string("not applicable: ") + e.what() + "\n");
        return 1;
    } catch (const ns::SearchFailed& e) {
        report["found"] = false;
        report["status"] = "search_failed";
        report["reason"] = e.what();
        emit(g, report, std::string("search failed: ") + e.what() + "\n");
        return 1;
    }
    emit(g, report, text);
    return 0;
}

int cmd_subdivide(const GlobalOpts& g, const std::string& system_path, std::size_t r) {
    ns::LinearSystem L = load_system(system_path);
    ns::LinearSystem S = ns::subdivide(L, r);
    std::string body = ns::serialize_matrix(S.matrix());
    ordered_json report = base_report(g, "subdivide");
    report["r"] = r;
    report["system"] = {{"q", S.q()}, {"m", S.m()}, {"k", S.k()},
                        {"matrix", ns::matrix_json(S.matrix())}};
    emit(g, report, body);
    return 0;
}

int cmd_delete(const GlobalOpts& g, const std::string& system_path, std::size_t var) {
    ns::LinearSystem L = load_system(system_path);
    if (var < 1 || var > L.k()) throw ns::DimensionMismatch("--var is 1-based in [1, k]");
    ns::LinearSystem D = ns::delete_variable(L, var - 1);
    std::string body = ns::serialize_matrix(D.matrix());
    ordered_json report = base_report(g, "delete");
    report["var"] = var;
    report["system"] = {{"q", D.q()}, {"m", D.m()}, {"k", D.k()},
                        {"matrix", ns::matrix_json(D.matrix())}};
    emit(g, report, body);
    return 0;
}

int cmd_iso(const GlobalOpts& g, const std::string& a_path, const std::string& b_path) {
    ns::LinearSystem A = load_system(a_path), B = load_system(b_path);
    ordered_json report = base_report(g, "iso");
    bool same_shape = A.q() == B.q() && A.m() == B.m() && A.k() == B.k();
    bool iso = same_shape && ns::isomorphic(A, B, g.budgets.max_perm_nodes);
    report["isomorphic"] = iso;
    std::string text;
    if (same_shape) {
        ns::CanonicalForm ca = ns::canonical_form(A, g.budgets.max_perm_nodes);
        ns::CanonicalForm cb = ns::canonical_form(B, g.budgets.max_perm_nodes);
        report["canonical_a"] = ns::matrix_json(ca.matrix);
        report["canonical_b"] = ns::matrix_json(cb.matrix);
        text += std::string(iso ? "isomorphic" : "not isomorphic") + "\n";
    } else {
        text += "not isomorphic (different shape or field)\n";
    }
    emit(g, report, text);
    return iso ? 0 : 1;
}

int cmd_alpha_screen(const GlobalOpts& g, const std::string& system_path, std::size_t trials,
                     std::uint32_t n) {
    ns::LinearSystem L = load_system(system_path);
    ns::Group grp(L.q(), n, g.budgets.max_table);
    ns::AlphaScreenOutcome r = ns::alpha_screen(L, grp, trials, ns::Rng(g.seed), g.budgets);

    ordered_json report = base_report(g, "alpha-screen");
    report["trials"] = trials;
    ordered_json patterns = ordered_json::array();
    std::string text;
    std::size_t survivors = 0;
    for (const auto& p : r.patterns) {
        ordered_json e;
        ordered_json alpha = ordered_json::array();
        std::string bits;
        for (int b : p.alpha) {
            alpha.push_back(b);
            bits += b ? '1' : '0';
        }
        e["alpha"] = alpha;
        e["survived"] = p.survived;
        e["violations"] = p.violations;
        e["worst_excess"] = p.worst_excess;
        e["max_imag_single"] = p.max_imag_single;
        patterns.push_back(std::move(e));
        survivors += p.survived;
        text += "alpha " + bits + ": " + (p.survived ? "survived" : "eliminated") +
                " (worst excess " + fmt(p.worst_excess) + ")\n";
    }
    report["patterns"] = std::move(patterns);
    report["survivors"] = survivors;
    text += std::to_string(survivors) + " / " + std::to_string(r.patterns.size()) +
            " patterns survived (screening only, not a certificate)\n";
    emit(g, report, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weakly norming linear systems over finite fields: densities, checks, "
                 "falsifiers, and the hypergraph compiler"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--seed", g.seed, "seed for every randomized search");
    app.add_option("--tol-rel", g.tol_rel, "relative tolerance for oracle agreement");
    app.add_option("--tol-abs", g.tol_abs, "absolute tolerance for exact identities");
    app.add_option("--budget-rowspace", g.budgets.max_rowspace, "row-space enumeration cap (q^m)");
    app.add_option("--budget-table", g.budgets.max_table, "dense table cap (q^n)");
    app.add_option("--budget-perm", g.budgets.max_perm_nodes, "canonical-form node cap");
    app.add_option("--budget-enum", g.budgets.max_enum, "solution/frequency tuple cap");
    app.add_option("--format", g.format, "stdout format")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", g.out, "write the JSON report here; witness files use this stem");

    std::string system_path, other_path, oracle = "both", method, emit_path;
    std::vector<std::string> fn_paths;
    std::uint32_t q = 2, n = 1;
    std::size_t r = 1, var = 1, trials = 0;
    std::size_t crosscheck = 0;

    CLI::App* c_check = app.add_subcommand("check", "run the necessary-condition suite");
    c_check->add_option("system", system_path, "matrix file")->required();

    CLI::App* c_density = app.add_subcommand("density", "evaluate t_L on function files");
    c_density->add_option("system", system_path, "matrix file")->required();
    c_density->add_option("functions", fn_paths, "1 or k function files")->required();
    c_density->add_option("--oracle", oracle, "evaluation path")
        ->check(CLI::IsMember({"direct", "fourier", "both"}));

    CLI::App* c_cayley = app.add_subcommand("cayley", "compile a hypergraph into a system");
    c_cayley->add_option("hypergraph", other_path, "hypergraph file")->required();
    c_cayley->add_option("--q", q, "field modulus")->required();
    c_cayley->add_option("--emit-system", emit_path, "write the compiled matrix here");
    c_cayley->add_option("--crosscheck", crosscheck, "verify this many random densities");
    c_cayley->add_option("--n", n, "group dimension for the crosscheck");

    CLI::App* c_classify = app.add_subcommand("classify", "rank <= 2 classification");
    c_classify->add_option("system", system_path, "matrix file")->required();

    CLI::App* c_falsify = app.add_subcommand("falsify", "search for a counterexample");
    c_falsify->add_option("method", method, "construction to use")
        ->required()
        ->check(CLI::IsMember({"odd-girth", "schatten", "holder", "sidorenko",
                               "forcing-witness"}));
    c_falsify->add_option("system", system_path, "matrix file")->required();
    c_falsify->add_option("--trials", trials, "search restarts (holder/sidorenko)");
    c_falsify->add_option("--n", n, "group dimension for the search");

    CLI::App* c_subdivide = app.add_subcommand("subdivide", "r-fold subdivision of a system");
    c_subdivide->add_option("system", system_path, "matrix file")->required();
    c_subdivide->add_option("-r,--r", r, "subdivision order")->required();

    CLI::App* c_delete = app.add_subcommand("delete", "project one variable away");
    c_delete->add_option("system", system_path, "matrix file")->required();
    c_delete->add_option("--var", var, "1-based variable index")->required();

    CLI::App* c_iso = app.add_subcommand("iso", "canonical-form comparison of two systems");
    c_iso->add_option("a", system_path, "matrix file")->required();
    c_iso->add_option("b", other_path, "matrix file")->required();

    CLI::App* c_alpha = app.add_subcommand("alpha-screen", "screen conjugation patterns");
    c_alpha->add_option("system", system_path, "matrix file")->required();
    c_alpha->add_option("--trials", trials, "random probes per pattern");
    c_alpha->add_option("--n", n, "group dimension for the probes");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_check) return cmd_check(g, system_path);
        if (*c_density) return cmd_density(g, system_path, fn_paths, oracle);
        if (*c_cayley) return cmd_cayley(g, other_path, q, emit_path, crosscheck, n);
        if (*c_classify) return cmd_classify(g, system_path);
        if (*c_falsify) {
            std::size_t t = trials ? trials : (method == "sidorenko" ? 6 : 200);
            return cmd_falsify(g, method, system_path, t, n);
        }
        if (*c_subdivide) return cmd_subdivide(g, system_path, r);
        if (*c_delete) return cmd_delete(g, system_path, var);
        if (*c_iso) return cmd_iso(g, system_path, other_path);
        if (*c_alpha) return cmd_alpha_screen(g, system_path, trials ? trials : 100, n);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
