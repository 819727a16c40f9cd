#include "cfvc/solver.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <climits>
#include <cstdint>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cfvc {

std::string_view decision_name(Decision d) noexcept {
    switch (d) {
    case Decision::yes: return "yes";
    case Decision::no: return "no";
    case Decision::budget_exhausted: return "budget";
    }
    return "?";
}

int path_svcfc_closed_form(int n) {
    if (n < 1) throw InvalidInput("path length must be positive");
    // ceil(log2(n+1)) == bit width of n
    return static_cast<int>(std::bit_width(static_cast<unsigned>(n)));
}

namespace {

void require_connected(const Graph& g) {
    if (g.num_vertices() == 0) throw InvalidInput("empty graph");
    if (!is_connected(g)) throw InvalidInput("graph is disconnected");
}

// --- search plan -------------------------------------------------------------------

/// A pair (u,v) at distance >= 3 together with the shortest-path DAG restricted
/// to its interval, in distance order from u. The last node is v.
struct IntervalNode {
    Vertex vertex;
    int pred_begin;
    int pred_end;
};

constexpr std::size_t kMaxIntervalNodes = std::size_t{1} << 24;

struct SearchPlan {
    int n = 0;
    int k = 0;
    std::vector<Vertex> order;
    std::vector<std::vector<Vertex>> earlier_neighbors;  // per position
    bool pruning = false;
    std::vector<IntervalNode> nodes;
    std::vector<int> preds;                              // local node indices
    std::vector<std::pair<int, int>> programs;           // node ranges
    std::vector<std::vector<int>> closing;               // per position: programs
    int longest_program = 0;
};

SearchPlan make_plan(const Graph& g, int k, const SolveConfig& cfg) {
    SearchPlan plan;
    plan.n = g.num_vertices();
    plan.k = k;
    plan.order = bfs_dag(g, 0).order;
    std::vector<int> pos(static_cast<std::size_t>(plan.n));
    for (int i = 0; i < plan.n; ++i) pos[static_cast<std::size_t>(plan.order[static_cast<std::size_t>(i)])] = i;
    plan.earlier_neighbors.resize(static_cast<std::size_t>(plan.n));
    for (int i = 0; i < plan.n; ++i)
        for (Vertex w : g.neighbors(plan.order[static_cast<std::size_t>(i)]))
            if (pos[static_cast<std::size_t>(w)] < i) plan.earlier_neighbors[static_cast<std::size_t>(i)].push_back(w);

    if (!cfg.prune_closed_pairs || k > 64) return plan;

    const auto n = static_cast<std::size_t>(plan.n);
    const auto dist = distance_matrix(g);
    auto d = [&](Vertex a, Vertex b) { return dist[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)]; };
    plan.closing.resize(n);
    std::vector<int> local(n, -1);
    std::vector<Vertex> interval;
    for (Vertex u = 0; u < plan.n; ++u) {
        for (Vertex v = u + 1; v < plan.n; ++v) {
            const int duv = d(u, v);
            // Proper colorings make every pair at distance <= 2 conflict-free.
            if (duv < 3) continue;
            interval.clear();
            for (Vertex w = 0; w < plan.n; ++w)
                if (d(u, w) + d(w, v) == duv) interval.push_back(w);
            std::stable_sort(interval.begin(), interval.end(), [&](Vertex a, Vertex b) { return d(u, a) < d(u, b); });
            if (plan.nodes.size() + interval.size() > kMaxIntervalNodes) {
                plan.nodes.clear();
                plan.preds.clear();
                plan.programs.clear();
                plan.closing.clear();
                return plan;
            }
            const int begin = static_cast<int>(plan.nodes.size());
            int close = 0;
            for (std::size_t i = 0; i < interval.size(); ++i) {
                Vertex w = interval[i];
                local[static_cast<std::size_t>(w)] = static_cast<int>(i);
                close = std::max(close, pos[static_cast<std::size_t>(w)]);
                IntervalNode node{w, static_cast<int>(plan.preds.size()), 0};
                for (Vertex x : g.neighbors(w))
                    if (local[static_cast<std::size_t>(x)] >= 0 && d(u, x) == d(u, w) - 1)
                        plan.preds.push_back(local[static_cast<std::size_t>(x)]);
                node.pred_end = static_cast<int>(plan.preds.size());
                plan.nodes.push_back(node);
            }
            for (Vertex w : interval) local[static_cast<std::size_t>(w)] = -1;
            plan.closing[static_cast<std::size_t>(close)].push_back(static_cast<int>(plan.programs.size()));
            plan.programs.emplace_back(begin, static_cast<int>(plan.nodes.size()));
            plan.longest_program = std::max(plan.longest_program, static_cast<int>(interval.size()));
        }
    }
    plan.pruning = true;
    return plan;
}

// --- search -----------------------------------------------------------------------

struct SharedState {
    std::atomic<long long> nodes{0};
    std::atomic<bool> stop{false};
    std::atomic<bool> budget_hit{false};
    std::mutex mutex;
    std::optional<std::vector<int>> found;
};

class Searcher {
public:
    Searcher(const Graph& g, const SearchPlan& plan, const SolveConfig& cfg, SharedState& shared)
        : g_(g), plan_(plan), cfg_(cfg), shared_(shared), colors_(static_cast<std::size_t>(plan.n), -1),
          verifier_(g, cfg.isa) {
        const auto len = static_cast<std::size_t>(plan.longest_program);
        zero_.resize(len);
        one_.resize(len);
        many_.resize(len);
    }

    /// Assigns `prefix` to the first positions; false if it is already infeasible.
    bool seed(std::span<const int> prefix, int& max_used) {
        std::fill(colors_.begin(), colors_.end(), -1);
        max_used = -1;
        for (std::size_t i = 0; i < prefix.size(); ++i) {
            if (!admissible(static_cast<int>(i), prefix[i])) return false;
            colors_[static_cast<std::size_t>(plan_.order[i])] = prefix[i];
            if (!closed_pairs_ok(static_cast<int>(i))) return false;
            max_used = std::max(max_used, prefix[i]);
        }
        return true;
    }

    /// Depth-first search from position `i`; true once a certificate is stored.
    bool run(int i, int max_used) {
        if (shared_.stop.load(std::memory_order_relaxed)) return false;
        if (i == plan_.n) return accept();
        const Vertex v = plan_.order[static_cast<std::size_t>(i)];
        const int limit = cfg_.symmetry_breaking ? std::min(plan_.k - 1, max_used + 1) : plan_.k - 1;
        for (int c = 0; c <= limit; ++c) {
            if (!admissible(i, c)) continue;
            if (!count_node()) return false;
            colors_[static_cast<std::size_t>(v)] = c;
            if (closed_pairs_ok(i) && run(i + 1, std::max(max_used, c))) return true;
            colors_[static_cast<std::size_t>(v)] = -1;
            if (shared_.stop.load(std::memory_order_relaxed)) return false;
        }
        return false;
    }

    /// Enumerates admissible partial colorings of the first `depth` positions.
    void expand_prefixes(int depth, std::vector<std::vector<int>>& out) {
        std::vector<int> prefix;
        expand(0, -1, depth, prefix, out);
    }

private:
    bool admissible(int i, int c) const {
        for (Vertex w : plan_.earlier_neighbors[static_cast<std::size_t>(i)])
            if (colors_[static_cast<std::size_t>(w)] == c) return false;
        return true;
    }

    bool count_node() {
        const long long count = shared_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
        if (cfg_.budget > 0 && count > cfg_.budget) {
            shared_.budget_hit.store(true);
            shared_.stop.store(true);
            return false;
        }
        return true;
    }

    bool closed_pairs_ok(int i) {
        if (!plan_.pruning) return true;
        for (int p : plan_.closing[static_cast<std::size_t>(i)])
            if (!program_ok(plan_.programs[static_cast<std::size_t>(p)])) return false;
        return true;
    }

    bool program_ok(std::pair<int, int> range) {
        const std::uint64_t all = plan_.k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << plan_.k) - 1;
        const int count = range.second - range.first;
        for (int i = 0; i < count; ++i) {
            const IntervalNode& node = plan_.nodes[static_cast<std::size_t>(range.first + i)];
            const std::uint64_t bit = std::uint64_t{1} << colors_[static_cast<std::size_t>(node.vertex)];
            const auto at = static_cast<std::size_t>(i);
            if (i == 0) {
                zero_[at] = all & ~bit;
                one_[at] = bit;
                many_[at] = 0;
                continue;
            }
            std::uint64_t z = 0, o = 0, t = 0;
            for (int p = node.pred_begin; p < node.pred_end; ++p) {
                const auto from = static_cast<std::size_t>(plan_.preds[static_cast<std::size_t>(p)]);
                z |= zero_[from];
                o |= one_[from];
                t |= many_[from];
            }
            zero_[at] = z & ~bit;
            one_[at] = (o & ~bit) | (z & bit);
            many_[at] = t | (o & bit);
        }
        return one_[static_cast<std::size_t>(count - 1)] != 0;
    }

    bool accept() {
        bool ok;
        const auto mode = cfg_.fast_fail_verify ? VerifyMode::fast_fail : VerifyMode::exhaustive;
        if (verifier_.fits(plan_.k)) {
            ok = cfg_.fast_fail_verify ? verifier_.all_conflict_free(colors_, plan_.k)
                                       : verifier_.bad_pairs(colors_, plan_.k).empty();
        } else {
            ok = verify_strong_cfvc_reference(g_, Coloring{plan_.k, colors_}, mode).strong_cfvc();
        }
        if (!ok) return false;
        std::lock_guard lock(shared_.mutex);
        if (!shared_.found) shared_.found = colors_;
        shared_.stop.store(true);
        return true;
    }

    void expand(int i, int max_used, int depth, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
        if (i == depth) {
            out.push_back(prefix);
            return;
        }
        const Vertex v = plan_.order[static_cast<std::size_t>(i)];
        const int limit = cfg_.symmetry_breaking ? std::min(plan_.k - 1, max_used + 1) : plan_.k - 1;
        for (int c = 0; c <= limit; ++c) {
            if (!admissible(i, c)) continue;
            if (!count_node()) return;
            colors_[static_cast<std::size_t>(v)] = c;
            if (closed_pairs_ok(i)) {
                prefix.push_back(c);
                expand(i + 1, std::max(max_used, c), depth, prefix, out);
                prefix.pop_back();
            }
            colors_[static_cast<std::size_t>(v)] = -1;
        }
    }

    const Graph& g_;
    const SearchPlan& plan_;
    const SolveConfig& cfg_;
    SharedState& shared_;
    std::vector<int> colors_;
    kernels::AllPairsVerifier verifier_;
    std::vector<std::uint64_t> zero_, one_, many_;
};

void search_parallel(const Graph& g, const SearchPlan& plan, const SolveConfig& cfg, SharedState& shared) {
    const int threads = cfg.threads > 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    Searcher splitter(g, plan, cfg, shared);
    std::vector<std::vector<int>> prefixes;
    int depth = 0;
    // Deepen until there is enough independent work to spread.
    while (depth < plan.n) {
        prefixes.clear();
        splitter.expand_prefixes(++depth, prefixes);
        if (shared.stop.load() || prefixes.size() >= static_cast<std::size_t>(threads) * 8 || prefixes.empty()) break;
    }
    if (shared.stop.load()) return;

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        Searcher searcher(g, plan, cfg, shared);
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= prefixes.size() || shared.stop.load()) return;
            int max_used = -1;
            if (searcher.seed(prefixes[idx], max_used)) searcher.run(static_cast<int>(prefixes[idx].size()), max_used);
        }
    };
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
}

}  // namespace

SolveOutcome solve_k(const Graph& g, int k, const SolveConfig& cfg) {
    require_connected(g);
    if (k < 1) throw InvalidInput("k must be positive");

    const SearchPlan plan = make_plan(g, k, cfg);
    SharedState shared;
    if (cfg.parallel) {
        search_parallel(g, plan, cfg, shared);
    } else {
        Searcher searcher(g, plan, cfg, shared);
        searcher.run(0, -1);
    }

    SolveOutcome out;
    out.k = k;
    out.nodes_explored = shared.nodes.load();
    if (shared.found) {
        out.decision = Decision::yes;
        out.certificate = Coloring{k, *shared.found};
    } else {
        out.decision = shared.budget_hit.load() ? Decision::budget_exhausted : Decision::no;
    }
    return out;
}

SolveOutcome svcfc_number(const Graph& g, const SolveConfig& cfg) {
    require_connected(g);
    const int n = g.num_vertices();
    SolveOutcome out;
    if (n == 1) {
        out.decision = Decision::yes;
        out.k = 1;
        out.certificate = Coloring{1, {0}};
        return out;
    }
    if (auto parts = is_complete_bipartite(g)) {
        Coloring f{2, std::vector<int>(static_cast<std::size_t>(n), 0)};
        for (Vertex v : parts->right) f.colors[static_cast<std::size_t>(v)] = 1;
        out.decision = Decision::yes;
        out.k = 2;
        out.certificate = std::move(f);
        return out;
    }

    // Both |X|+1 (trivial cover coloring) and n (all distinct) always succeed.
    const VertexCover cover = greedy_vertex_cover(g);
    const int upper = std::min(cover.size() + 1, n);
    SolveConfig step = cfg;
    for (int k = 3; k < upper; ++k) {
        if (cfg.budget > 0) step.budget = cfg.budget - out.nodes_explored;
        if (cfg.budget > 0 && step.budget <= 0) {
            out.decision = Decision::budget_exhausted;
            out.k = k;
            return out;
        }
        SolveOutcome attempt = solve_k(g, k, step);
        out.nodes_explored += attempt.nodes_explored;
        if (attempt.decision != Decision::no) {
            attempt.nodes_explored = out.nodes_explored;
            return attempt;
        }
    }
    out.decision = Decision::yes;
    out.k = upper;
    if (upper == n) {
        Coloring f{n, std::vector<int>(static_cast<std::size_t>(n))};
        for (Vertex v = 0; v < n; ++v) f.colors[static_cast<std::size_t>(v)] = v;
        out.certificate = std::move(f);
    } else {
        out.certificate = trivial_cover_coloring(g, cover);
    }
    return out;
}

Coloring trivial_cover_coloring(const Graph& g, const VertexCover& x) {
    if (!is_vertex_cover(g, x.members)) throw InvalidInput("not a vertex cover");
    Coloring f{x.size() + 1, std::vector<int>(static_cast<std::size_t>(g.num_vertices()), x.size())};
    std::vector<Vertex> members = x.members;
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (static_cast<int>(members.size()) != x.size()) throw InvalidInput("cover lists a vertex twice");
    for (std::size_t i = 0; i < members.size(); ++i) f.colors[static_cast<std::size_t>(members[i])] = static_cast<int>(i);
    return f;
}

// --- kernelization ------------------------------------------------------------------

int KernelTrace::kernel_n() const {
    return static_cast<int>(std::count_if(index_map.begin(), index_map.end(), [](int i) { return i >= 0; }));
}

long long kernel_size_bound(int cover_size, int k) {
    if (cover_size >= 62) return LLONG_MAX;
    const long long classes = 1LL << cover_size;
    if (static_cast<long long>(k) + 1 > (LLONG_MAX - cover_size) / classes) return LLONG_MAX;
    return cover_size + (static_cast<long long>(k) + 1) * classes;
}

KernelResult kernelize(const Graph& g, int k, const VertexCover& x) {
    require_connected(g);
    if (k < 1) throw InvalidInput("k must be positive");
    if (!is_vertex_cover(g, x.members)) throw InvalidInput("not a vertex cover");

    const int n = g.num_vertices();
    std::vector<char> in_cover(static_cast<std::size_t>(n), 0);
    for (Vertex v : x.members) in_cover[static_cast<std::size_t>(v)] = 1;
    std::vector<Vertex> independent;
    for (Vertex v = 0; v < n; ++v)
        if (!in_cover[static_cast<std::size_t>(v)]) independent.push_back(v);

    KernelResult result;
    result.trace.original_n = n;
    std::vector<Vertex> removed;
    const auto keep = static_cast<std::size_t>(k) + 1;
    for (const auto& cls : false_twin_classes(g, independent).classes) {
        for (std::size_t i = cls.size(); i > keep; --i) {
            result.trace.removals.emplace_back(cls[i - 1], cls.front());
            removed.push_back(cls[i - 1]);
        }
    }

    result.kernel = g.without(removed);
    result.trace.index_map.assign(static_cast<std::size_t>(n), -1);
    std::vector<char> gone(static_cast<std::size_t>(n), 0);
    for (Vertex v : removed) gone[static_cast<std::size_t>(v)] = 1;
    int next = 0;
    for (Vertex v = 0; v < n; ++v)
        if (!gone[static_cast<std::size_t>(v)]) result.trace.index_map[static_cast<std::size_t>(v)] = next++;
    for (Vertex v : x.members) result.cover.members.push_back(result.trace.index_map[static_cast<std::size_t>(v)]);
    std::sort(result.cover.members.begin(), result.cover.members.end());
    return result;
}

Coloring lift_coloring(const KernelTrace& trace, const Coloring& kernel_coloring) {
    if (static_cast<int>(trace.index_map.size()) != trace.original_n)
        throw InvalidInput("trace index map does not match its vertex count");
    if (kernel_coloring.num_vertices() != trace.kernel_n())
        throw InvalidInput("kernel coloring has " + std::to_string(kernel_coloring.num_vertices()) +
                           " vertices, trace expects " + std::to_string(trace.kernel_n()));
    Coloring f{kernel_coloring.k, std::vector<int>(static_cast<std::size_t>(trace.original_n), -1)};
    for (Vertex v = 0; v < trace.original_n; ++v)
        if (int idx = trace.index_map[static_cast<std::size_t>(v)]; idx >= 0) f.colors[static_cast<std::size_t>(v)] = kernel_coloring[idx];
    for (auto it = trace.removals.rbegin(); it != trace.removals.rend(); ++it) {
        auto [gone, twin] = *it;
        if (gone < 0 || twin < 0 || gone >= trace.original_n || twin >= trace.original_n)
            throw InvalidInput("trace removal out of range");
        f.colors[static_cast<std::size_t>(gone)] = f.colors[static_cast<std::size_t>(twin)];
    }
    if (std::find(f.colors.begin(), f.colors.end(), -1) != f.colors.end())
        throw InvalidInput("trace leaves a vertex uncolored");
    return f;
}

SolveOutcome solve_fpt(const Graph& g, int k, std::optional<VertexCover> x, const SolveConfig& cfg) {
    require_connected(g);
    if (k < 1) throw InvalidInput("k must be positive");
    const VertexCover cover = x ? *x : greedy_vertex_cover(g);
    if (!is_vertex_cover(g, cover.members)) throw InvalidInput("not a vertex cover");

    if (k >= cover.size() + 1) {
        SolveOutcome out;
        out.decision = Decision::yes;
        out.k = k;
        Coloring f = trivial_cover_coloring(g, cover);
        f.k = k;
        out.certificate = std::move(f);
        return out;
    }

    const KernelResult reduced = kernelize(g, k, cover);
    SolveOutcome out = solve_k(reduced.kernel, k, cfg);
    if (out.decision == Decision::yes) {
        Coloring lifted = lift_coloring(reduced.trace, *out.certificate);
        if (!verify_strong_cfvc(g, lifted, VerifyMode::fast_fail).strong_cfvc())
            throw std::logic_error("lifted certificate failed verification");
        out.certificate = std::move(lifted);
    }
    return out;
}

// --- serialization ------------------------------------------------------------------

std::string write_outcome(const SolveOutcome& outcome) {
    std::ostringstream out;
    out << "result " << decision_name(outcome.decision) << '\n';
    if (outcome.certificate) out << write_coloring(*outcome.certificate);
    out << "nodes " << outcome.nodes_explored << '\n';
    return out.str();
}

std::string write_trace(const KernelTrace& trace) {
    std::ostringstream out;
    out << "p trace " << trace.original_n << ' ' << trace.kernel_n() << '\n';
    for (auto [gone, twin] : trace.removals) out << "rm " << gone + 1 << ' ' << twin + 1 << '\n';
    return out.str();
}

KernelTrace parse_trace(std::string_view text) {
    KernelTrace trace;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    int kernel_n = -1;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string tag;
        if (!(fields >> tag) || tag == "c") continue;
        if (tag == "p") {
            std::string kind;
            if (header || !(fields >> kind >> trace.original_n >> kernel_n) || kind != "trace" || trace.original_n < 0)
                throw ParseError(line_no, "malformed header, expected 'p trace <n> <kernel n>'");
            header = true;
        } else if (tag == "rm") {
            long long gone = 0, twin = 0;
            if (!header) throw ParseError(line_no, "removal before header");
            if (!(fields >> gone >> twin)) throw ParseError(line_no, "malformed line, expected 'rm <removed> <representative>'");
            if (gone < 1 || twin < 1 || gone > trace.original_n || twin > trace.original_n || gone == twin)
                throw ParseError(line_no, "vertex index out of range");
            trace.removals.emplace_back(static_cast<Vertex>(gone - 1), static_cast<Vertex>(twin - 1));
        } else {
            throw ParseError(line_no, "unknown line type '" + tag + "'");
        }
    }
    if (!header) throw ParseError(0, "missing header 'p trace <n> <kernel n>'");
    trace.index_map.assign(static_cast<std::size_t>(trace.original_n), 0);
    for (auto [gone, twin] : trace.removals) trace.index_map[static_cast<std::size_t>(gone)] = -1;
    int next = 0;
    for (auto& idx : trace.index_map)
        if (idx == 0) idx = next++;
    if (next != kernel_n) throw ParseError(0, "kernel size in header does not match removals");
    return trace;
}

}  // namespace cfvc
