#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cfvc/graph.hpp"
#include "cfvc/kernels.hpp"
#include "cfvc/verify.hpp"

namespace cfvc {

struct SolveConfig {
    /// Canonical color classes: a vertex may only open the smallest unused color.
    bool symmetry_breaking = true;
    /// Reject a partial coloring once every vertex on all shortest u,v-paths
    /// of some pair is colored and that pair has no conflict-free path.
    bool prune_closed_pairs = true;
    /// Leaf verification stops at the first bad pair.
    bool fast_fail_verify = true;
    /// Maximum search nodes (color assignments); 0 means unlimited.
    long long budget = 0;
    bool parallel = false;
    int threads = 0;  // 0: hardware concurrency
    kernels::Isa isa = kernels::best_isa();
};

enum class Decision { yes, no, budget_exhausted };

std::string_view decision_name(Decision d) noexcept;

struct SolveOutcome {
    Decision decision = Decision::no;
    std::optional<Coloring> certificate;  // present iff decision == yes
    long long nodes_explored = 0;
    int k = 0;  // the color budget decided (the minimum for svcfc_number)
};

/// Exhaustive search over proper k-colorings. Throws InvalidInput on
/// disconnected graphs, n == 0 or k < 1.
SolveOutcome solve_k(const Graph& g, int k, const SolveConfig& cfg = {});

/// Least k admitting a strong cfvc k-coloring, with certificate.
SolveOutcome svcfc_number(const Graph& g, const SolveConfig& cfg = {});

/// ceil(log2(n + 1)), the known value for the n-vertex path.
int path_svcfc_closed_form(int n);

/// Distinct colors 0..|X|-1 on the cover (ascending vertex order) and color
/// |X| on every other vertex; declared k = |X| + 1.
Coloring trivial_cover_coloring(const Graph& g, const VertexCover& x);

struct KernelTrace {
    int original_n = 0;
    /// (removed vertex, surviving twin) in original indexing, removal order.
    std::vector<std::pair<Vertex, Vertex>> removals;
    /// original vertex -> kernel vertex, -1 for removed vertices.
    std::vector<int> index_map;

    int kernel_n() const;
};

struct KernelResult {
    Graph kernel;
    KernelTrace trace;
    VertexCover cover;  // the input cover in kernel indexing
};

/// Trims every twin class outside the cover to k+1 members, dropping the
/// highest-index members first.
KernelResult kernelize(const Graph& g, int k, const VertexCover& x);

/// Largest possible kernel: |X| + (k+1) * 2^|X| (saturates at LLONG_MAX).
long long kernel_size_bound(int cover_size, int k);

/// Copies each removed vertex's color from its surviving twin.
Coloring lift_coloring(const KernelTrace& trace, const Coloring& kernel_coloring);

/// Vertex-cover parameterized pipeline: trivial coloring when k > |X|,
/// otherwise kernelize, solve the kernel, lift and re-verify.
SolveOutcome solve_fpt(const Graph& g, int k, std::optional<VertexCover> x = std::nullopt,
                       const SolveConfig& cfg = {});

/// "result <yes|no|budget>", the certificate block when present, "nodes <count>".
std::string write_outcome(const SolveOutcome& outcome);
/// "p trace <original n> <kernel n>" then "rm <removed> <representative>" (1-indexed).
std::string write_trace(const KernelTrace& trace);
KernelTrace parse_trace(std::string_view text);

}  // namespace cfvc
