#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cfvc/graph.hpp"

namespace cfvc {

/// Total assignment of colors 0..k-1 to the vertices of a host graph.
struct Coloring {
    int k = 0;
    std::vector<int> colors;

    int num_vertices() const noexcept { return static_cast<int>(colors.size()); }
    int operator[](Vertex v) const { return colors[static_cast<std::size_t>(v)]; }
    /// Number of distinct colors actually used.
    int colors_used() const;

    friend bool operator==(const Coloring&, const Coloring&) = default;
};

/// Throws InvalidInput unless `f` has one color per vertex of `g`, all in 0..k-1.
void check_coloring_shape(const Graph& g, const Coloring& f);

/// "s cfvc <n> <k>" then n lines "v <vertex> <color>" (1-indexed vertices).
Coloring parse_coloring(std::string_view text);
std::string write_coloring(const Coloring& f);

using VertexPair = std::pair<Vertex, Vertex>;

struct VerificationReport {
    bool proper = false;
    std::vector<VertexPair> bad_pairs;  // u < v, sorted
    long long pairs_checked = 0;

    bool strong_cfvc() const noexcept { return proper && bad_pairs.empty(); }
};

enum class VerifyMode {
    exhaustive,  // report every bad pair
    fast_fail,   // stop at the first bad pair found
};

bool is_proper(const Graph& g, const Coloring& f);

/// True iff some shortest path from `dag.source` to `target` carries some
/// color exactly once. Runs one capped-count reachability pass per color.
bool cf_shortest_path_exists(const ShortestPathDag& dag, const Coloring& f, Vertex target);

/// Decides whether `f` is a strong cfvc coloring of `g`. Uses the SIMD
/// all-pairs kernel when the instance fits it, otherwise the per-source
/// reference. Throws InvalidInput for disconnected graphs or shape errors.
VerificationReport verify_strong_cfvc(const Graph& g, const Coloring& f,
                                      VerifyMode mode = VerifyMode::exhaustive);

/// Per-source DAG reachability; independent of the kernel path.
VerificationReport verify_strong_cfvc_reference(const Graph& g, const Coloring& f,
                                                VerifyMode mode = VerifyMode::exhaustive);

/// Brute force: enumerates every shortest u,v-path explicitly.
/// Throws InvalidInput when n exceeds `max_vertices`.
bool oracle_cf_path(const Graph& g, const Coloring& f, Vertex u, Vertex v, int max_vertices = 10);

/// "proper <true|false>" then "bad <u> <v>" lines (1-indexed).
std::string write_report(const VerificationReport& report);

}  // namespace cfvc
