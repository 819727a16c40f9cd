// cfvc: command-line front end for verification, solving, kernelization and
// the NAE-SAT gadget reduction.
//
// Exit codes: 0 yes / success, 1 no (or coloring rejected), 3 budget
// exhausted, 2 input or usage error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cfvc/fixtures.hpp"
#include "cfvc/graph.hpp"
#include "cfvc/reduction.hpp"
#include "cfvc/solver.hpp"
#include "cfvc/verify.hpp"

namespace fs = std::filesystem;
using namespace cfvc;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;
constexpr int kExitBudget = 3;

/// Diagnostic already formatted as "<file>[:<line>]: <message>".
struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw CliError(path + ": cannot write file");
}

/// Runs `parse` on the file's text, prefixing any failure with the file name.
template <typename F>
auto load(const std::string& path, F parse) {
    const std::string text = read_file(path);
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw CliError(path + (e.line() > 0 ? ":" + std::to_string(e.line()) : std::string()) + ": " + e.message());
    } catch (const InvalidInput& e) {
        throw CliError(path + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
        throw CliError(path + ": " + e.what());
    }
}

Graph load_graph(const std::string& path) { return load(path, [](const std::string& t) { return parse_graph(t); }); }

Coloring load_coloring(const std::string& path, const Graph& g) {
    Coloring f = load(path, [](const std::string& t) { return parse_coloring(t); });
    try {
        check_coloring_shape(g, f);
    } catch (const InvalidInput& e) {
        throw CliError(path + ": " + e.what());
    }
    return f;
}

/// Cover file: whitespace-separated 1-indexed vertex ids; lines starting with 'c' are comments.
VertexCover load_cover(const std::string& path, const Graph& g) {
    VertexCover x = load(path, [&](const std::string& text) {
        VertexCover cover;
        std::istringstream in(text);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            std::istringstream fields(line);
            std::string tok;
            if (!(fields >> tok) || tok == "c") continue;
            do {
                long long id = 0;
                try {
                    std::size_t used = 0;
                    id = std::stoll(tok, &used);
                    if (used != tok.size()) throw std::invalid_argument(tok);
                } catch (const std::logic_error&) {
                    throw ParseError(line_no, "expected a vertex id, got '" + tok + "'");
                }
                if (id < 1 || id > g.num_vertices())
                    throw ParseError(line_no, "vertex " + tok + " out of range 1.." + std::to_string(g.num_vertices()));
                cover.members.push_back(static_cast<Vertex>(id - 1));
            } while (fields >> tok);
        }
        std::sort(cover.members.begin(), cover.members.end());
        if (std::adjacent_find(cover.members.begin(), cover.members.end()) != cover.members.end())
            throw InvalidInput("vertex listed twice");
        if (!is_vertex_cover(g, cover.members)) throw InvalidInput("not a vertex cover of the graph");
        return cover;
    });
    return x;
}

int exit_for(Decision d) {
    switch (d) {
    case Decision::yes: return kExitYes;
    case Decision::no: return kExitNo;
    case Decision::budget_exhausted: return kExitBudget;
    }
    return kExitError;
}

void write_or_print(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_file(path, text);
}

// --- subcommands ---------------------------------------------------------------------

struct VerifyArgs {
    std::string graph, coloring;
};

int run_verify(const VerifyArgs& a) {
    const Graph g = load_graph(a.graph);
    const Coloring f = load_coloring(a.coloring, g);
    if (!is_connected(g)) throw CliError(a.graph + ": graph is disconnected");
    const auto report = verify_strong_cfvc(g, f);
    std::cout << write_report(report);
    return report.strong_cfvc() ? kExitYes : kExitNo;
}

struct SolveArgs {
    std::string graph, cover, out;
    int k = 0;
    bool min = false, fpt = false, parallel = false, no_symmetry = false, no_prune = false;
    long long budget = 0;
    int threads = 0;
};

int run_solve(const SolveArgs& a) {
    const Graph g = load_graph(a.graph);
    if (g.num_vertices() == 0 || !is_connected(g)) throw CliError(a.graph + ": graph is empty or disconnected");
    SolveConfig cfg;
    cfg.budget = a.budget;
    cfg.parallel = a.parallel;
    cfg.threads = a.threads;
    cfg.symmetry_breaking = !a.no_symmetry;
    cfg.prune_closed_pairs = !a.no_prune;

    SolveOutcome out;
    if (a.min) {
        out = svcfc_number(g, cfg);
    } else if (a.fpt) {
        std::optional<VertexCover> cover;
        if (!a.cover.empty()) cover = load_cover(a.cover, g);
        out = solve_fpt(g, a.k, cover, cfg);
    } else {
        out = solve_k(g, a.k, cfg);
    }

    if (out.certificate && !verify_strong_cfvc(g, *out.certificate).strong_cfvc())
        throw std::logic_error("certificate failed re-verification");
    std::cout << write_outcome(out);
    if (out.certificate && !a.out.empty()) write_file(a.out, write_coloring(*out.certificate));
    return exit_for(out.decision);
}

struct KernelizeArgs {
    std::string graph, cover, out, trace;
    int k = 0;
};

int run_kernelize(const KernelizeArgs& a) {
    const Graph g = load_graph(a.graph);
    if (g.num_vertices() == 0 || !is_connected(g)) throw CliError(a.graph + ": graph is empty or disconnected");
    const VertexCover cover = a.cover.empty() ? greedy_vertex_cover(g) : load_cover(a.cover, g);
    const KernelResult r = kernelize(g, a.k, cover);
    write_file(a.out, write_graph(r.kernel));
    write_file(a.trace, write_trace(r.trace));
    std::cout << "kernel " << g.num_vertices() << " -> " << r.kernel.num_vertices() << " vertices, cover "
              << cover.size() << ", bound " << kernel_size_bound(cover.size(), a.k) << '\n';
    return kExitYes;
}

struct ReduceArgs {
    std::string cnf, variant = "vc", out, map;
};

int run_reduce(const ReduceArgs& a) {
    const PositiveCnf cnf = load(a.cnf, [](const std::string& t) { return parse_cnf(t); });
    ReductionArtifact art;
    try {
        art = build_reduction(cnf, parse_variant(a.variant));
    } catch (const InvalidInput& e) {
        throw CliError(a.cnf + ": " + e.what());
    }
    for (const auto& w : art.warnings) std::cerr << "cfvc: warning: " << a.cnf << ": " << w << '\n';
    write_file(a.out, write_graph(art.graph));
    nlohmann::json side = to_sidecar(art);
    // Graph location relative to the sidecar, so extract can find it without --graph.
    const fs::path map_dir = fs::absolute(a.map).parent_path();
    side["graph"] = fs::relative(fs::absolute(a.out), map_dir).generic_string();
    write_file(a.map, side.dump(2) + "\n");
    std::cout << "reduction " << a.variant << ": " << art.graph.num_vertices() << " vertices, "
              << art.graph.num_edges() << " edges, modulator " << art.modulator.size() << '\n';
    return kExitYes;
}

struct ExtractArgs {
    std::string map, coloring, graph;
};

int run_extract(const ExtractArgs& a) {
    const nlohmann::json side = load(a.map, [](const std::string& t) { return nlohmann::json::parse(t); });
    std::string graph_path = a.graph;
    if (graph_path.empty()) {
        if (!side.contains("graph") || !side["graph"].is_string())
            throw CliError(a.map + ": sidecar names no graph file; pass --graph");
        graph_path = (fs::absolute(a.map).parent_path() / side["graph"].get<std::string>()).string();
    }
    const Graph g = load_graph(graph_path);
    ReductionArtifact art;
    try {
        art = from_sidecar(side, g);
    } catch (const InvalidInput& e) {
        throw CliError(a.map + ": " + e.what());
    }
    const Coloring f = load_coloring(a.coloring, g);
    const auto report = verify_strong_cfvc(g, f, VerifyMode::fast_fail);
    if (!report.strong_cfvc()) {
        std::cerr << "cfvc: " << a.coloring << ": not a strong cfvc coloring of the instance\n";
        return kExitNo;
    }
    try {
        std::cout << format_assignment(coloring_to_assignment(art, f)) << '\n';
    } catch (const InvalidInput& e) {
        throw CliError(a.coloring + ": " + e.what());
    }
    return kExitYes;
}

struct GenerateArgs {
    int n = 0, left = 0, right = 0;
    bool minus_u = false;
    std::string out, coloring_out;
};

int run_generate(const std::string& kind, const GenerateArgs& a) {
    Graph g;
    if (kind == "path") {
        g = fixtures::path(a.n);
    } else if (kind == "complete-bipartite") {
        g = fixtures::complete_bipartite(a.left, a.right);
    } else {
        g = a.minus_u ? fixtures::fig1_minus_u() : fixtures::fig1_graph();
        if (!a.coloring_out.empty()) {
            const Coloring f = fixtures::fig1_coloring();
            if (!verify_strong_cfvc(g, f).strong_cfvc()) throw std::logic_error("fig1 coloring failed verification");
            write_file(a.coloring_out, write_coloring(f));
        }
    }
    write_or_print(a.out, write_graph(g));
    return kExitYes;
}

struct BenchArgs {
    std::string suite, csv;
    int max = 0;
    long long budget = 50'000'000;
};

class BenchTable {
public:
    explicit BenchTable(const std::string& path) : out_(path) {
        if (!out_) throw CliError(path + ": cannot write file");
        out_ << "instance,n,k,decision,nodes,millis\n";
    }

    template <typename F>
    SolveOutcome row(const std::string& instance, int n, int k, F&& solve) {
        const auto start = std::chrono::steady_clock::now();
        SolveOutcome out = solve();
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        out_ << instance << ',' << n << ',' << k << ',' << decision_name(out.decision) << ',' << out.nodes_explored
             << ',' << std::fixed << std::setprecision(3) << ms << '\n';
        std::cout << instance << " k=" << k << ' ' << decision_name(out.decision) << ' ' << out.nodes_explored
                  << " nodes " << std::fixed << std::setprecision(1) << ms << " ms\n";
        return out;
    }

private:
    std::ofstream out_;
};

int run_bench(const BenchArgs& a) {
    BenchTable table(a.csv);
    SolveConfig cfg;
    cfg.budget = a.budget;
    bool exhausted = false;
    if (a.suite == "paths") {
        for (int n = 1; n <= a.max; ++n) {
            const Graph g = fixtures::path(n);
            for (int k = 1; k <= path_svcfc_closed_form(n); ++k) {
                auto out = table.row("path-" + std::to_string(n), n, k, [&] { return solve_k(g, k, cfg); });
                exhausted |= out.decision == Decision::budget_exhausted;
            }
        }
    } else {
        for (int m = 1; m <= a.max; ++m) {
            const PositiveCnf cnf = random_positive_cnf(std::min(m + 1, 8), m, 2, static_cast<std::uint64_t>(m));
            for (Variant variant : {Variant::vc, Variant::dp}) {
                const ReductionArtifact art = build_reduction(cnf, variant);
                const std::string name = "reduction-" + std::string(variant_name(variant)) + "-m" + std::to_string(m);
                auto out = table.row(name, art.graph.num_vertices(), 3, [&] { return solve_k(art.graph, 3, cfg); });
                exhausted |= out.decision == Decision::budget_exhausted;
                if (variant == Variant::vc) {
                    // Kernel of the same instance with the construction's cover.
                    const KernelResult r = kernelize(art.graph, 3, VertexCover{art.modulator});
                    auto kout = table.row(name + "-kernel", r.kernel.num_vertices(), 3,
                                          [&] { return solve_k(r.kernel, 3, cfg); });
                    exhausted |= kout.decision == Decision::budget_exhausted;
                }
            }
        }
    }
    return exhausted ? kExitBudget : kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Strong conflict-free vertex-connection coloring toolkit"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "Check a coloring and list bad pairs");
    verify_cmd->add_option("--graph", verify.graph, "Graph file")->required();
    verify_cmd->add_option("--coloring", verify.coloring, "Coloring file")->required();

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Decide strong cfvc k-colorability");
    solve_cmd->add_option("--graph", solve.graph, "Graph file")->required();
    auto* k_opt = solve_cmd->add_option("--k", solve.k, "Number of colors")->check(CLI::PositiveNumber);
    auto* min_opt = solve_cmd->add_flag("--min", solve.min, "Compute the least k");
    auto* fpt_opt = solve_cmd->add_flag("--fpt", solve.fpt, "Vertex-cover kernelization pipeline");
    solve_cmd->add_option("--cover", solve.cover, "Vertex cover file (1-indexed ids)")->needs(fpt_opt);
    solve_cmd->add_option("--budget", solve.budget, "Search node budget")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--out", solve.out, "Write the certificate coloring here");
    auto* par_opt = solve_cmd->add_flag("--parallel", solve.parallel, "Split the search across threads");
    solve_cmd->add_option("--threads", solve.threads, "Worker threads")->needs(par_opt)->check(CLI::PositiveNumber);
    solve_cmd->add_flag("--no-symmetry", solve.no_symmetry, "Disable color-class symmetry breaking");
    solve_cmd->add_flag("--no-prune", solve.no_prune, "Verify complete colorings only");
    k_opt->excludes(min_opt);
    fpt_opt->excludes(min_opt);
    fpt_opt->needs(k_opt);

    KernelizeArgs kern;
    auto* kern_cmd = app.add_subcommand("kernelize", "Trim oversized twin classes");
    kern_cmd->add_option("--graph", kern.graph, "Graph file")->required();
    kern_cmd->add_option("--k", kern.k, "Number of colors")->required()->check(CLI::PositiveNumber);
    kern_cmd->add_option("--cover", kern.cover, "Vertex cover file (default: greedy)");
    kern_cmd->add_option("--out", kern.out, "Kernel graph file")->required();
    kern_cmd->add_option("--trace", kern.trace, "Removal trace file")->required();

    ReduceArgs reduce;
    auto* reduce_cmd = app.add_subcommand("reduce", "Build the gadget graph of a positive CNF");
    reduce_cmd->add_option("--cnf", reduce.cnf, "DIMACS CNF file, positive literals")->required();
    reduce_cmd->add_option("--variant", reduce.variant, "vc or dp")->check(CLI::IsMember({"vc", "dp"}));
    reduce_cmd->add_option("--out", reduce.out, "Graph file")->required();
    reduce_cmd->add_option("--map", reduce.map, "JSON sidecar")->required();

    ExtractArgs extract;
    auto* extract_cmd = app.add_subcommand("extract", "Decode a 3-coloring of a gadget graph");
    extract_cmd->add_option("--map", extract.map, "JSON sidecar written by reduce")->required();
    extract_cmd->add_option("--coloring", extract.coloring, "Coloring file")->required();
    extract_cmd->add_option("--graph", extract.graph, "Graph file (default: the one named in the sidecar)");

    GenerateArgs gen;
    std::string gen_kind;
    auto* gen_cmd = app.add_subcommand("generate", "Write a built-in graph");
    gen_cmd->require_subcommand(1);
    gen_cmd->add_option("--out", gen.out, "Graph file (default: stdout)");
    auto* gen_path = gen_cmd->add_subcommand("path", "Path on N vertices");
    gen_path->add_option("N", gen.n)->required()->check(CLI::PositiveNumber);
    auto* gen_kmn = gen_cmd->add_subcommand("complete-bipartite", "K_{M,N}");
    gen_kmn->add_option("M", gen.left)->required()->check(CLI::PositiveNumber);
    gen_kmn->add_option("N", gen.right)->required()->check(CLI::PositiveNumber);
    auto* gen_fig1 = gen_cmd->add_subcommand("fig1", "Ten-vertex non-monotonicity example");
    auto* minus_u = gen_fig1->add_flag("--minus-u", gen.minus_u, "Delete vertex u");
    gen_fig1->add_option("--coloring-out", gen.coloring_out, "Also write its strong cfvc 3-coloring")->excludes(minus_u);
    for (auto* sub : {gen_path, gen_kmn, gen_fig1}) {
        sub->add_option("--out", gen.out, "Graph file (default: stdout)");
        sub->callback([&gen_kind, sub] { gen_kind = sub->get_name(); });
    }

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Timing table for solver families");
    bench_cmd->add_option("--suite", bench.suite, "paths or reductions")->required()->check(CLI::IsMember({"paths", "reductions"}));
    bench_cmd->add_option("--max", bench.max, "Largest family member")->required()->check(CLI::PositiveNumber);
    bench_cmd->add_option("--csv", bench.csv, "Output CSV")->required();
    bench_cmd->add_option("--budget", bench.budget, "Node budget per solve")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }
    if (*solve_cmd && !solve.min && solve.k == 0) {
        std::cerr << "cfvc: solve needs --k or --min\n";
        return kExitError;
    }

    try {
        if (*verify_cmd) return run_verify(verify);
        if (*solve_cmd) return run_solve(solve);
        if (*kern_cmd) return run_kernelize(kern);
        if (*reduce_cmd) return run_reduce(reduce);
        if (*extract_cmd) return run_extract(extract);
        if (*gen_cmd) return run_generate(gen_kind, gen);
        if (*bench_cmd) return run_bench(bench);
    } catch (const CliError& e) {
        std::cerr << "cfvc: " << e.what() << '\n';
        return kExitError;
    } catch (const InvalidInput& e) {
        std::cerr << "cfvc: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "cfvc: internal error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
