#include "cfvc/verify.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "cfvc/kernels.hpp"

namespace cfvc {

int Coloring::colors_used() const {
    std::vector<int> sorted(colors);
    std::sort(sorted.begin(), sorted.end());
    return static_cast<int>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

void check_coloring_shape(const Graph& g, const Coloring& f) {
    if (f.num_vertices() != g.num_vertices())
        throw InvalidInput("coloring has " + std::to_string(f.num_vertices()) + " vertices, graph has " +
                           std::to_string(g.num_vertices()));
    if (f.k < 1) throw InvalidInput("coloring declares k < 1");
    for (int c : f.colors)
        if (c < 0 || c >= f.k) throw InvalidInput("color " + std::to_string(c) + " outside 0.." + std::to_string(f.k - 1));
}

// --- I/O --------------------------------------------------------------------

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::string_view(" \t\r").find(line[i]) != std::string_view::npos) ++i;
        std::size_t j = i;
        while (j < line.size() && std::string_view(" \t\r").find(line[j]) == std::string_view::npos) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

long long number(std::string_view tok, int line) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(line, "expected integer, got '" + std::string(tok) + "'");
    return value;
}

}  // namespace

Coloring parse_coloring(std::string_view text) {
    Coloring f;
    int n = -1;
    std::vector<char> seen;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        auto tok = tokens(text.substr(pos, eol - pos));
        pos = eol + 1;
        ++line_no;
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "s") {
            if (n >= 0) throw ParseError(line_no, "duplicate header");
            if (tok.size() != 4 || tok[1] != "cfvc") throw ParseError(line_no, "malformed header, expected 's cfvc <n> <k>'");
            long long nn = number(tok[2], line_no), kk = number(tok[3], line_no);
            if (nn < 0 || nn > (1 << 24) || kk < 1 || kk > (1 << 24)) throw ParseError(line_no, "malformed header, bad counts");
            n = static_cast<int>(nn);
            f.k = static_cast<int>(kk);
            f.colors.assign(static_cast<std::size_t>(n), -1);
            seen.assign(static_cast<std::size_t>(n), 0);
        } else if (tok[0] == "v") {
            if (n < 0) throw ParseError(line_no, "vertex line before header");
            if (tok.size() != 3) throw ParseError(line_no, "malformed line, expected 'v <vertex> <color>'");
            long long v = number(tok[1], line_no), c = number(tok[2], line_no);
            if (v < 1 || v > n) throw ParseError(line_no, "vertex index out of range 1.." + std::to_string(n));
            if (c < 0 || c >= f.k) throw ParseError(line_no, "color out of range 0.." + std::to_string(f.k - 1));
            auto idx = static_cast<std::size_t>(v - 1);
            if (seen[idx]) throw ParseError(line_no, "vertex " + std::to_string(v) + " colored twice");
            seen[idx] = 1;
            f.colors[idx] = static_cast<int>(c);
        } else {
            throw ParseError(line_no, "unknown line type '" + std::string(tok[0]) + "'");
        }
    }
    if (n < 0) throw ParseError(0, "missing header 's cfvc <n> <k>'");
    for (std::size_t v = 0; v < seen.size(); ++v)
        if (!seen[v]) throw ParseError(0, "vertex " + std::to_string(v + 1) + " has no color");
    return f;
}

std::string write_coloring(const Coloring& f) {
    std::ostringstream out;
    out << "s cfvc " << f.num_vertices() << ' ' << f.k << '\n';
    for (std::size_t v = 0; v < f.colors.size(); ++v) out << "v " << v + 1 << ' ' << f.colors[v] << '\n';
    return out.str();
}

std::string write_report(const VerificationReport& report) {
    std::ostringstream out;
    out << "proper " << (report.proper ? "true" : "false") << '\n';
    for (auto [u, v] : report.bad_pairs) out << "bad " << u + 1 << ' ' << v + 1 << '\n';
    return out.str();
}

// --- verification --------------------------------------------------------------

bool is_proper(const Graph& g, const Coloring& f) {
    if (f.num_vertices() != g.num_vertices()) throw InvalidInput("coloring size does not match graph");
    for (auto [u, v] : g.edges())
        if (f[u] == f[v]) return false;
    return true;
}

namespace {

// Count states for one color, as bits: 1 = none yet, 2 = exactly one, 4 = two or more.
constexpr unsigned kNone = 1, kOnce = 2, kMany = 4;

constexpr unsigned step(unsigned states, bool hit) {
    if (!hit) return states;
    unsigned out = 0;
    if (states & kNone) out |= kOnce;
    if (states & (kOnce | kMany)) out |= kMany;
    return out;
}

/// One reachability pass over the DAG for color `c`; returns per-vertex state sets.
std::vector<unsigned> count_states(const ShortestPathDag& dag, const Coloring& f, int c) {
    std::vector<unsigned> reach(dag.dist.size(), 0);
    reach[static_cast<std::size_t>(dag.source)] = step(kNone, f[dag.source] == c);
    for (Vertex x : dag.order) {
        unsigned rx = reach[static_cast<std::size_t>(x)];
        for (Vertex y : dag.successors[static_cast<std::size_t>(x)])
            reach[static_cast<std::size_t>(y)] |= step(rx, f[y] == c);
    }
    return reach;
}

}  // namespace

bool cf_shortest_path_exists(const ShortestPathDag& dag, const Coloring& f, Vertex target) {
    if (target < 0 || target >= static_cast<int>(dag.dist.size())) throw InvalidInput("target out of range");
    if (dag.dist[static_cast<std::size_t>(target)] == kUnreachable) throw InvalidInput("target unreachable from source");
    for (int c = 0; c < f.k; ++c)
        if (count_states(dag, f, c)[static_cast<std::size_t>(target)] & kOnce) return true;
    return false;
}

VerificationReport verify_strong_cfvc_reference(const Graph& g, const Coloring& f, VerifyMode mode) {
    check_coloring_shape(g, f);
    if (!is_connected(g)) throw InvalidInput("graph is disconnected");
    VerificationReport report;
    report.proper = is_proper(g, f);
    if (!report.proper) return report;

    const int n = g.num_vertices();
    for (Vertex u = 0; u < n; ++u) {
        auto dag = bfs_dag(g, u);
        std::vector<char> ok(static_cast<std::size_t>(n), 0);
        for (int c = 0; c < f.k; ++c) {
            auto reach = count_states(dag, f, c);
            for (Vertex v = u + 1; v < n; ++v)
                if (reach[static_cast<std::size_t>(v)] & kOnce) ok[static_cast<std::size_t>(v)] = 1;
        }
        for (Vertex v = u + 1; v < n; ++v) {
            ++report.pairs_checked;
            if (!ok[static_cast<std::size_t>(v)]) {
                report.bad_pairs.emplace_back(u, v);
                if (mode == VerifyMode::fast_fail) return report;
            }
        }
    }
    return report;
}

VerificationReport verify_strong_cfvc(const Graph& g, const Coloring& f, VerifyMode mode) {
    check_coloring_shape(g, f);
    if (f.k > kernels::kMaxKernelColors) return verify_strong_cfvc_reference(g, f, mode);
    if (!is_connected(g)) throw InvalidInput("graph is disconnected");

    kernels::AllPairsVerifier kernel(g);
    if (!kernel.fits(f.k)) return verify_strong_cfvc_reference(g, f, mode);

    VerificationReport report;
    report.proper = is_proper(g, f);
    if (!report.proper) return report;
    const long long n = g.num_vertices();
    report.bad_pairs = kernel.bad_pairs(f.colors, f.k, mode == VerifyMode::fast_fail);
    report.pairs_checked = n * (n - 1) / 2;
    return report;
}

// --- brute-force oracle -----------------------------------------------------------

namespace {

struct PathEnumerator {
    const Graph& g;
    const Coloring& f;
    const std::vector<int>& dist_from_u;
    const std::vector<int>& dist_to_v;
    Vertex target;
    std::vector<int> counts;
    bool found = false;

    void walk(Vertex x) {
        if (found) return;
        ++counts[static_cast<std::size_t>(f[x])];
        if (x == target) {
            found = std::find(counts.begin(), counts.end(), 1) != counts.end();
        } else {
            for (Vertex y : g.neighbors(x)) {
                // y continues a shortest path iff it is one step further from u
                // and one step closer to v.
                if (dist_from_u[static_cast<std::size_t>(y)] == dist_from_u[static_cast<std::size_t>(x)] + 1 &&
                    dist_to_v[static_cast<std::size_t>(y)] == dist_to_v[static_cast<std::size_t>(x)] - 1)
                    walk(y);
            }
        }
        --counts[static_cast<std::size_t>(f[x])];
    }
};

}  // namespace

bool oracle_cf_path(const Graph& g, const Coloring& f, Vertex u, Vertex v, int max_vertices) {
    if (g.num_vertices() > max_vertices)
        throw InvalidInput("oracle limited to " + std::to_string(max_vertices) + " vertices");
    check_coloring_shape(g, f);
    if (!is_connected(g)) throw InvalidInput("graph is disconnected");
    auto from_u = bfs_distances(g, u);
    auto to_v = bfs_distances(g, v);
    PathEnumerator walker{g, f, from_u, to_v, v, std::vector<int>(static_cast<std::size_t>(f.k), 0)};
    walker.walk(u);
    return walker.found;
}

}  // namespace cfvc
