#include "cfvc/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <sstream>

namespace cfvc {

Graph::Graph(int n, std::span<const std::pair<Vertex, Vertex>> edges) {
    if (n < 0) throw InvalidInput("negative vertex count");
    adj_.resize(static_cast<std::size_t>(n));
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw InvalidInput("edge endpoint out of range: " + std::to_string(u) + "-" + std::to_string(v));
        if (u == v) throw InvalidInput("self-loop at vertex " + std::to_string(u));
        adj_[static_cast<std::size_t>(u)].push_back(v);
        adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& list : adj_) {
        std::sort(list.begin(), list.end());
        if (std::adjacent_find(list.begin(), list.end()) != list.end())
            throw InvalidInput("duplicate edge");
    }
    num_edges_ = static_cast<int>(edges.size());
}

bool Graph::adjacent(Vertex u, Vertex v) const {
    const auto& list = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(static_cast<std::size_t>(num_edges_));
    for (Vertex u = 0; u < num_vertices(); ++u)
        for (Vertex v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph Graph::without(std::span<const Vertex> removed) const {
    std::vector<char> drop(adj_.size(), 0);
    for (Vertex v : removed) drop.at(static_cast<std::size_t>(v)) = 1;
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < num_vertices(); ++v)
        if (!drop[static_cast<std::size_t>(v)]) keep.push_back(v);
    return induced(keep);
}

Graph Graph::induced(std::span<const Vertex> keep) const {
    std::vector<int> index(adj_.size(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) index.at(static_cast<std::size_t>(keep[i])) = static_cast<int>(i);
    std::vector<std::pair<Vertex, Vertex>> es;
    for (auto [u, v] : edges()) {
        int iu = index[static_cast<std::size_t>(u)], iv = index[static_cast<std::size_t>(v)];
        if (iu >= 0 && iv >= 0) es.emplace_back(iu, iv);
    }
    return Graph(static_cast<int>(keep.size()), es);
}

// --- I/O --------------------------------------------------------------------

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

long long to_int(std::string_view tok, int line, const char* what) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(line, std::string("expected integer ") + what + ", got '" + std::string(tok) + "'");
    return value;
}

}  // namespace

Graph parse_graph(std::string_view text) {
    int n = -1;
    long long declared_m = 0;
    int line_no = 0;
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::map<std::pair<Vertex, Vertex>, int> seen;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        auto tok = split_ws(line);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "p") {
            if (n >= 0) throw ParseError(line_no, "duplicate header");
            if (tok.size() != 4 || tok[1] != "edge") throw ParseError(line_no, "malformed header, expected 'p edge <n> <m>'");
            long long nn = to_int(tok[2], line_no, "vertex count");
            declared_m = to_int(tok[3], line_no, "edge count");
            if (nn < 0 || declared_m < 0 || nn > (1 << 24)) throw ParseError(line_no, "malformed header, bad counts");
            n = static_cast<int>(nn);
        } else if (tok[0] == "e") {
            if (n < 0) throw ParseError(line_no, "edge before header");
            if (tok.size() != 3) throw ParseError(line_no, "malformed edge line, expected 'e <u> <v>'");
            long long u = to_int(tok[1], line_no, "endpoint");
            long long v = to_int(tok[2], line_no, "endpoint");
            if (u < 1 || v < 1 || u > n || v > n)
                throw ParseError(line_no, "vertex index out of range 1.." + std::to_string(n));
            if (u == v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(u));
            const std::pair<Vertex, Vertex> key{static_cast<Vertex>(std::min(u, v) - 1), static_cast<Vertex>(std::max(u, v) - 1)};
            auto [it, inserted] = seen.emplace(key, line_no);
            if (!inserted)
                throw ParseError(line_no, "duplicate edge " + std::to_string(key.first + 1) + "-" +
                                              std::to_string(key.second + 1) + " (first on line " +
                                              std::to_string(it->second) + ")");
            edges.push_back(key);
        } else {
            throw ParseError(line_no, "unknown line type '" + std::string(tok[0]) + "'");
        }
    }
    if (n < 0) throw ParseError(0, "missing header 'p edge <n> <m>'");
    if (static_cast<long long>(edges.size()) != declared_m)
        throw ParseError(0, "header declares " + std::to_string(declared_m) + " edges, found " +
                                std::to_string(edges.size()));
    return Graph(n, edges);
}

std::string write_graph(const Graph& g) {
    std::ostringstream out;
    out << "p edge " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
    return out.str();
}

// --- distances -----------------------------------------------------------------

ShortestPathDag bfs_dag(const Graph& g, Vertex source) {
    const int n = g.num_vertices();
    if (source < 0 || source >= n) throw InvalidInput("bfs source out of range");
    ShortestPathDag dag;
    dag.source = source;
    dag.dist.assign(static_cast<std::size_t>(n), kUnreachable);
    dag.successors.resize(static_cast<std::size_t>(n));
    dag.order.reserve(static_cast<std::size_t>(n));
    dag.dist[static_cast<std::size_t>(source)] = 0;
    dag.order.push_back(source);
    for (std::size_t head = 0; head < dag.order.size(); ++head) {
        Vertex x = dag.order[head];
        int dx = dag.dist[static_cast<std::size_t>(x)];
        for (Vertex y : g.neighbors(x)) {
            auto& dy = dag.dist[static_cast<std::size_t>(y)];
            if (dy == kUnreachable) {
                dy = dx + 1;
                dag.order.push_back(y);
            }
            if (dy == dx + 1) dag.successors[static_cast<std::size_t>(x)].push_back(y);
        }
    }
    return dag;
}

std::vector<int> bfs_distances(const Graph& g, Vertex source) {
    const int n = g.num_vertices();
    std::vector<int> dist(static_cast<std::size_t>(n), kUnreachable);
    std::vector<Vertex> queue;
    queue.reserve(static_cast<std::size_t>(n));
    dist[static_cast<std::size_t>(source)] = 0;
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex x = queue[head];
        for (Vertex y : g.neighbors(x)) {
            if (dist[static_cast<std::size_t>(y)] == kUnreachable) {
                dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
                queue.push_back(y);
            }
        }
    }
    return dist;
}

std::vector<int> distance_matrix(const Graph& g) {
    const auto n = static_cast<std::size_t>(g.num_vertices());
    std::vector<int> out(n * n);
    for (std::size_t u = 0; u < n; ++u) {
        auto row = bfs_distances(g, static_cast<Vertex>(u));
        std::copy(row.begin(), row.end(), out.begin() + static_cast<std::ptrdiff_t>(u * n));
    }
    return out;
}

bool is_connected(const Graph& g) {
    if (g.num_vertices() <= 1) return true;
    auto dist = bfs_distances(g, 0);
    return std::none_of(dist.begin(), dist.end(), [](int d) { return d == kUnreachable; });
}

namespace {

std::vector<int> eccentricities(const Graph& g) {
    if (!is_connected(g)) throw InvalidInput("graph is disconnected");
    std::vector<int> ecc(static_cast<std::size_t>(g.num_vertices()), 0);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        auto dist = bfs_distances(g, v);
        ecc[static_cast<std::size_t>(v)] = *std::max_element(dist.begin(), dist.end());
    }
    return ecc;
}

}  // namespace

int diameter(const Graph& g) {
    if (g.num_vertices() == 0) return 0;
    auto ecc = eccentricities(g);
    return *std::max_element(ecc.begin(), ecc.end());
}

int radius(const Graph& g) {
    if (g.num_vertices() == 0) return 0;
    auto ecc = eccentricities(g);
    return *std::min_element(ecc.begin(), ecc.end());
}

// --- structure -----------------------------------------------------------------

TwinClassPartition false_twin_classes(const Graph& g, std::span<const Vertex> subset) {
    std::vector<Vertex> members(subset.begin(), subset.end());
    for (Vertex v : members)
        if (v < 0 || v >= g.num_vertices()) throw InvalidInput("twin subset vertex out of range");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());

    // Stable sort by neighborhood fingerprint keeps ascending member order
    // within each class.
    std::stable_sort(members.begin(), members.end(), [&](Vertex a, Vertex b) {
        auto na = g.neighbors(a), nb = g.neighbors(b);
        return std::lexicographical_compare(na.begin(), na.end(), nb.begin(), nb.end());
    });
    TwinClassPartition out;
    for (std::size_t i = 0; i < members.size();) {
        std::size_t j = i + 1;
        auto ni = g.neighbors(members[i]);
        while (j < members.size() && std::ranges::equal(ni, g.neighbors(members[j]))) ++j;
        out.classes.emplace_back(members.begin() + static_cast<std::ptrdiff_t>(i),
                                 members.begin() + static_cast<std::ptrdiff_t>(j));
        i = j;
    }
    std::sort(out.classes.begin(), out.classes.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

VertexCover greedy_vertex_cover(const Graph& g) {
    std::vector<char> matched(static_cast<std::size_t>(g.num_vertices()), 0);
    VertexCover cover;
    for (auto [u, v] : g.edges()) {
        if (matched[static_cast<std::size_t>(u)] || matched[static_cast<std::size_t>(v)]) continue;
        matched[static_cast<std::size_t>(u)] = matched[static_cast<std::size_t>(v)] = 1;
        cover.members.push_back(u);
        cover.members.push_back(v);
    }
    std::sort(cover.members.begin(), cover.members.end());
    return cover;
}

bool is_vertex_cover(const Graph& g, std::span<const Vertex> members) {
    std::vector<char> in(static_cast<std::size_t>(g.num_vertices()), 0);
    for (Vertex v : members) {
        if (v < 0 || v >= g.num_vertices()) return false;
        in[static_cast<std::size_t>(v)] = 1;
    }
    for (auto [u, v] : g.edges())
        if (!in[static_cast<std::size_t>(u)] && !in[static_cast<std::size_t>(v)]) return false;
    return true;
}

std::optional<std::vector<int>> bipartite_sides(const Graph& g) {
    const int n = g.num_vertices();
    std::vector<int> side(static_cast<std::size_t>(n), -1);
    std::vector<Vertex> queue;
    for (Vertex s = 0; s < n; ++s) {
        if (side[static_cast<std::size_t>(s)] >= 0) continue;
        side[static_cast<std::size_t>(s)] = 0;
        queue.assign(1, s);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            Vertex x = queue[head];
            for (Vertex y : g.neighbors(x)) {
                auto& sy = side[static_cast<std::size_t>(y)];
                if (sy < 0) {
                    sy = 1 - side[static_cast<std::size_t>(x)];
                    queue.push_back(y);
                } else if (sy == side[static_cast<std::size_t>(x)]) {
                    return std::nullopt;
                }
            }
        }
    }
    return side;
}

std::optional<Bipartition> is_complete_bipartite(const Graph& g) {
    if (g.num_vertices() < 2) throw InvalidInput("complete bipartite test needs n >= 2");
    if (!is_connected(g)) throw InvalidInput("graph is disconnected");
    auto sides = bipartite_sides(g);
    if (!sides) return std::nullopt;
    Bipartition parts;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        ((*sides)[static_cast<std::size_t>(v)] == 0 ? parts.left : parts.right).push_back(v);
    // Both sides are independent; completeness is then an edge count.
    if (static_cast<long long>(g.num_edges()) !=
        static_cast<long long>(parts.left.size()) * static_cast<long long>(parts.right.size()))
        return std::nullopt;
    return parts;
}

std::optional<std::vector<Vertex>> as_path(const Graph& g) {
    const int n = g.num_vertices();
    if (n == 0 || g.num_edges() != n - 1 || !is_connected(g)) return std::nullopt;
    if (n == 1) return std::vector<Vertex>{0};
    Vertex start = -1;
    for (Vertex v = 0; v < n; ++v) {
        if (g.degree(v) > 2) return std::nullopt;
        if (g.degree(v) == 1 && start < 0) start = v;
    }
    std::vector<Vertex> seq{start};
    Vertex prev = -1, cur = start;
    while (static_cast<int>(seq.size()) < n) {
        Vertex next = -1;
        for (Vertex y : g.neighbors(cur))
            if (y != prev) next = y;
        prev = cur;
        cur = next;
        seq.push_back(cur);
    }
    return seq;
}

}  // namespace cfvc
