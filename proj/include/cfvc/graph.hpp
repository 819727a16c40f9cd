#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cfvc {

using Vertex = int;

/// Raised for malformed input documents. `line()` is 1-based, 0 when the
/// problem is not tied to a particular line.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line), message_(what) {}

    int line() const noexcept { return line_; }
    /// The message without the "line N: " prefix.
    const std::string& message() const noexcept { return message_; }

private:
    int line_;
    std::string message_;
};

/// Raised when an operation's input contract is violated (disconnected
/// graph, mismatched sizes, invalid cover, ...).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
/// Immutable once built.
class Graph {
public:
    Graph() = default;

    /// Builds from an edge list. Throws InvalidInput on self-loops,
    /// duplicate edges, or out-of-range endpoints.
    Graph(int n, std::span<const std::pair<Vertex, Vertex>> edges);
    Graph(int n, std::initializer_list<std::pair<Vertex, Vertex>> edges)
        : Graph(n, std::span<const std::pair<Vertex, Vertex>>(edges.begin(), edges.size())) {}

    int num_vertices() const noexcept { return static_cast<int>(adj_.size()); }
    int num_edges() const noexcept { return num_edges_; }

    std::span<const Vertex> neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
    bool adjacent(Vertex u, Vertex v) const;

    /// Edges (u,v) with u < v in lexicographic order.
    std::vector<std::pair<Vertex, Vertex>> edges() const;

    /// Graph with the listed vertices removed; survivors are renumbered in
    /// ascending order of their original index.
    Graph without(std::span<const Vertex> removed) const;
    Graph induced(std::span<const Vertex> keep) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::vector<Vertex>> adj_;
    int num_edges_ = 0;
};

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

/// BFS distances from `source` plus the tight (distance-increasing) edges.
struct ShortestPathDag {
    Vertex source = 0;
    std::vector<int> dist;
    std::vector<std::vector<Vertex>> successors;
    /// Vertices in nondecreasing distance order (reachable only).
    std::vector<Vertex> order;
};

struct TwinClassPartition {
    std::vector<std::vector<Vertex>> classes;
};

struct VertexCover {
    std::vector<Vertex> members;  // sorted

    int size() const noexcept { return static_cast<int>(members.size()); }
};

struct Bipartition {
    std::vector<Vertex> left;
    std::vector<Vertex> right;
};

// --- I/O --------------------------------------------------------------------

/// Reads the DIMACS-style "p edge" format (1-indexed vertices).
Graph parse_graph(std::string_view text);
/// Canonical writer: header then edges sorted lexicographically, u < v.
std::string write_graph(const Graph& g);

// --- distances -----------------------------------------------------------------

ShortestPathDag bfs_dag(const Graph& g, Vertex source);
std::vector<int> bfs_distances(const Graph& g, Vertex source);
/// Row-major n*n BFS distances; kUnreachable for different components.
std::vector<int> distance_matrix(const Graph& g);

bool is_connected(const Graph& g);
/// Throws InvalidInput when disconnected.
int diameter(const Graph& g);
int radius(const Graph& g);

// --- structure -----------------------------------------------------------------

/// Partitions `subset` by open neighborhood. Classes are ordered by their
/// smallest member; members ascend.
TwinClassPartition false_twin_classes(const Graph& g, std::span<const Vertex> subset);

/// Endpoints of a maximal matching built by scanning edges in lexicographic order.
VertexCover greedy_vertex_cover(const Graph& g);
bool is_vertex_cover(const Graph& g, std::span<const Vertex> members);

/// Proper 2-coloring by BFS, if one exists (side 0 / side 1 per vertex).
std::optional<std::vector<int>> bipartite_sides(const Graph& g);

/// The bipartition of a complete bipartite graph, or nullopt.
/// Throws InvalidInput for disconnected graphs or n < 2.
std::optional<Bipartition> is_complete_bipartite(const Graph& g);

/// True when g is a simple path (n >= 1) and returns its vertex sequence.
std::optional<std::vector<Vertex>> as_path(const Graph& g);

}  // namespace cfvc
