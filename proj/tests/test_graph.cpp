#include "doctest.h"

#include <random>

#include "cfvc/fixtures.hpp"
#include "cfvc/graph.hpp"
#include "support/oracles.hpp"

using namespace cfvc;
namespace fx = cfvc::fixtures;

TEST_CASE("parse_graph reads the smallest connected graph") {
    Graph g = parse_graph("p edge 2 1\ne 1 2\n");
    CHECK(g.num_vertices() == 2);
    CHECK(g.num_edges() == 1);
    CHECK(g.adjacent(0, 1));
}

TEST_CASE("parse_graph skips comments and accepts either endpoint order") {
    Graph a = parse_graph("c triangle\np edge 3 3\ne 1 2\ne 3 2\nc mid\ne 1 3\n");
    Graph b = parse_graph("p edge 3 3\ne 3 1\ne 2 1\ne 2 3\n");
    CHECK(a == b);
}

TEST_CASE("parse_graph rejects malformed input with line numbers") {
    auto line_of = [](const char* text) {
        try {
            parse_graph(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("p edge 3 1\ne 1 5\n") == 2);
    CHECK_THROWS_WITH_AS(parse_graph("p edge 3 1\ne 1 5\n"), doctest::Contains("out of range"), ParseError);
    CHECK_THROWS_WITH_AS(parse_graph("p edge 3 1\ne 2 2\n"), doctest::Contains("self-loop"), ParseError);
    CHECK(line_of("p edge 3 2\ne 1 2\nc x\ne 2 1\n") == 4);
    CHECK_THROWS_WITH_AS(parse_graph("p edge 3 2\ne 1 2\ne 2 1\n"), doctest::Contains("duplicate edge"), ParseError);
    CHECK(line_of("p graph 3 2\n") == 1);
    CHECK(line_of("p edge x 2\n") == 1);
    CHECK_THROWS_AS(parse_graph("e 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_graph("p edge 3 2\ne 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_graph(""), ParseError);
}

TEST_CASE("write_graph is canonical") {
    CHECK(write_graph(fx::path(2)) == "p edge 2 1\ne 1 2\n");
    CHECK(write_graph(Graph(1, {})) == "p edge 1 0\n");
    CHECK(write_graph(parse_graph("p edge 3 2\ne 3 2\ne 2 1\n")) == "p edge 3 2\ne 1 2\ne 2 3\n");
}

TEST_CASE("parse/write round-trip on random graphs") {
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 50; ++trial) {
        Graph g = testing::random_connected_graph(20, 0.15, rng);
        CHECK(parse_graph(write_graph(g)) == g);
    }
}

TEST_CASE("bfs_dag distances and tight edges") {
    SUBCASE("path") {
        auto dag = bfs_dag(fx::path(4), 0);
        CHECK(dag.dist == std::vector<int>{0, 1, 2, 3});
        CHECK(dag.successors[1] == std::vector<Vertex>{2});
        CHECK(dag.successors[3].empty());
    }
    SUBCASE("star") {
        auto dag = bfs_dag(fx::star(4), 0);
        CHECK(dag.dist == std::vector<int>{0, 1, 1, 1, 1});
    }
    SUBCASE("fig1 v1 to v8 against Floyd-Warshall") {
        Graph g = fx::fig1_graph();
        auto dag = bfs_dag(g, fx::fig1::v1);
        CHECK(dag.dist[fx::fig1::v8] == 7);
        auto fw = testing::floyd_warshall(g);
        CHECK(fw[static_cast<std::size_t>(fx::fig1::v1 * 10 + fx::fig1::v8)] == 7);
    }
    SUBCASE("unreachable vertices carry the sentinel") {
        Graph g(3, {{0, 1}});
        CHECK(bfs_dag(g, 0).dist[2] == kUnreachable);
    }
}

TEST_CASE("BFS distances equal Floyd-Warshall on all connected graphs up to 7 vertices") {
    for (int n = 1; n <= 7; ++n) {
        for (const Graph& g : testing::connected_graphs(n)) {
            auto fw = testing::floyd_warshall(g);
            for (Vertex s = 0; s < n; ++s) {
                auto dag = bfs_dag(g, s);
                for (Vertex t = 0; t < n; ++t) REQUIRE(dag.dist[static_cast<std::size_t>(t)] == fw[static_cast<std::size_t>(s * n + t)]);
                // tight edges are exactly the distance-increasing ones
                for (auto [x, y] : g.edges()) {
                    int dx = dag.dist[static_cast<std::size_t>(x)], dy = dag.dist[static_cast<std::size_t>(y)];
                    REQUIRE(std::abs(dx - dy) <= 1);
                    const auto& sx = dag.successors[static_cast<std::size_t>(x)];
                    REQUIRE((std::find(sx.begin(), sx.end(), y) != sx.end()) == (dy == dx + 1));
                }
            }
        }
    }
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        Graph g = testing::random_connected_graph(15, 0.1, rng);
        auto fw = testing::floyd_warshall(g);
        CHECK(distance_matrix(g) == fw);
    }
}

TEST_CASE("graph enumeration matches the known counts of connected graphs") {
    const std::size_t expected[] = {0, 1, 1, 2, 6, 21, 112, 853};
    for (int n = 1; n <= 7; ++n) CHECK(testing::connected_graphs(n).size() == expected[n]);
}

TEST_CASE("diameter, radius and connectivity") {
    CHECK(diameter(fx::complete_bipartite(3, 3)) == 2);
    for (int n = 1; n <= 9; ++n) CHECK(diameter(fx::path(n)) == n - 1);
    CHECK(radius(fx::path(5)) == 2);
    CHECK_THROWS_AS(diameter(Graph(2, {})), InvalidInput);

    CHECK(is_connected(fx::path(2)));
    CHECK_FALSE(is_connected(Graph(2, {})));
    CHECK(is_connected(Graph(0, {})));
    CHECK(is_connected(Graph(1, {})));
}

TEST_CASE("false twin classes") {
    SUBCASE("K2,3 large side") {
        Graph g = fx::complete_bipartite(2, 3);
        const Vertex side[] = {2, 3, 4};
        auto p = false_twin_classes(g, side);
        REQUIRE(p.classes.size() == 1);
        CHECK(p.classes[0] == std::vector<Vertex>{2, 3, 4});
    }
    SUBCASE("fig1 twins") {
        using namespace fx::fig1;
        Graph g = fx::fig1_graph();
        std::vector<Vertex> all(10);
        std::iota(all.begin(), all.end(), 0);
        auto p = false_twin_classes(g, all);
        CHECK(std::find(p.classes.begin(), p.classes.end(), std::vector<Vertex>{v2, v2p}) != p.classes.end());
        CHECK(std::find(p.classes.begin(), p.classes.end(), std::vector<Vertex>{u, v}) != p.classes.end());
        CHECK(p.classes.size() == 8);
    }
    SUBCASE("P4 has singleton classes only") {
        const Vertex all[] = {0, 1, 2, 3};
        auto p = false_twin_classes(fx::path(4), all);
        CHECK(p.classes == std::vector<std::vector<Vertex>>{{0}, {1}, {2}, {3}});
    }
}

TEST_CASE("false twin classes agree with pairwise neighborhood comparison") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        Graph g = testing::random_connected_graph(9, 0.3, rng);
        std::vector<Vertex> all(9);
        std::iota(all.begin(), all.end(), 0);
        auto p = false_twin_classes(g, all);
        std::vector<int> cls(9, -1);
        for (std::size_t i = 0; i < p.classes.size(); ++i)
            for (Vertex v : p.classes[i]) {
                REQUIRE(cls[static_cast<std::size_t>(v)] == -1);
                cls[static_cast<std::size_t>(v)] = static_cast<int>(i);
            }
        for (Vertex a = 0; a < 9; ++a)
            for (Vertex b = 0; b < 9; ++b) {
                auto na = g.neighbors(a), nb = g.neighbors(b);
                bool same = std::equal(na.begin(), na.end(), nb.begin(), nb.end());
                REQUIRE(same == (cls[static_cast<std::size_t>(a)] == cls[static_cast<std::size_t>(b)]));
            }
    }
}

TEST_CASE("greedy vertex cover") {
    CHECK(greedy_vertex_cover(fx::path(2)).members == std::vector<Vertex>{0, 1});
    CHECK(greedy_vertex_cover(fx::star(4)).members == std::vector<Vertex>{0, 1});
    CHECK(greedy_vertex_cover(Graph(1, {})).members.empty());

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        std::uniform_int_distribution<int> size(2, 10);
        Graph g = testing::random_connected_graph(size(rng), 0.25, rng);
        auto cover = greedy_vertex_cover(g);
        REQUIRE(is_vertex_cover(g, cover.members));
        REQUIRE(cover.size() <= 2 * testing::brute_min_vertex_cover(g));
    }
}

TEST_CASE("complete bipartite recognition") {
    auto parts = is_complete_bipartite(fx::complete_bipartite(2, 3));
    REQUIRE(parts);
    CHECK(std::min(parts->left.size(), parts->right.size()) == 2);
    CHECK(std::max(parts->left.size(), parts->right.size()) == 3);
    CHECK_FALSE(is_complete_bipartite(fx::path(4)));
    CHECK_FALSE(is_complete_bipartite(fx::cycle(5)));
    CHECK(is_complete_bipartite(fx::cycle(4)));
    CHECK_THROWS_AS(is_complete_bipartite(Graph(1, {})), InvalidInput);
    CHECK_THROWS_AS(is_complete_bipartite(Graph(3, {{0, 1}})), InvalidInput);

    for (int n = 2; n <= 6; ++n)
        for (const Graph& g : testing::connected_graphs(n))
            if (auto p = is_complete_bipartite(g)) {
                CHECK(diameter(g) <= 2);
                CHECK(g.num_edges() == static_cast<int>(p->left.size() * p->right.size()));
            }
}

TEST_CASE("as_path recognizes paths only") {
    CHECK(as_path(fx::path(5)).has_value());
    CHECK(as_path(Graph(1, {})) == std::vector<Vertex>{0});
    CHECK_FALSE(as_path(fx::star(3)).has_value());
    CHECK_FALSE(as_path(fx::cycle(4)).has_value());
}
