#include "cfvc/fixtures.hpp"

#include <vector>

namespace cfvc::fixtures {

Graph path(int n) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph(n, edges);
}

Graph cycle(int n) {
    if (n < 3) throw InvalidInput("cycle needs at least 3 vertices");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Graph(n, edges);
}

Graph complete_bipartite(int left, int right) {
    if (left < 0 || right < 0) throw InvalidInput("negative side size");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int i = 0; i < left; ++i)
        for (int j = 0; j < right; ++j) edges.emplace_back(i, left + j);
    return Graph(left + right, edges);
}

Graph star(int leaves) { return complete_bipartite(1, leaves); }

Graph fig1_graph() {
    using namespace fig1;
    return Graph(10, {{v1, v2}, {v2, v3}, {v3, v}, {v, v5}, {v5, v6}, {v6, v7}, {v7, v8},
                      {v1, v2p}, {v2p, v3}, {v3, u}, {u, v5}});
}

Graph fig1_minus_u() {
    const Vertex removed[] = {fig1::u};
    return fig1_graph().without(removed);
}

Coloring fig1_coloring() {
    // labels:          v1 v2 v2' v3 u  v  v5 v6 v7 v8
    const int labels[] = {1, 2, 3, 1, 2, 3, 1, 3, 2, 1};
    Coloring f{3, {}};
    for (int label : labels) f.colors.push_back(label - 1);
    return f;
}

PositiveCnf sample_formula() {
    enum { u, v, w, x, y, z };
    return PositiveCnf{6, {{u, v, x}, {w, y}, {w, x, z}, {v, x, y, z}}};
}

}  // namespace cfvc::fixtures
