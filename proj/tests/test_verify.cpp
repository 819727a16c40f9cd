#include "doctest.h"

#include <numeric>
#include <random>

#include "cfvc/fixtures.hpp"
#include "cfvc/verify.hpp"
#include "support/oracles.hpp"

using namespace cfvc;
namespace fx = cfvc::fixtures;

namespace {

Coloring alternating(int n) {
    Coloring f{2, std::vector<int>(static_cast<std::size_t>(n))};
    for (int i = 0; i < n; ++i) f.colors[static_cast<std::size_t>(i)] = i % 2;
    return f;
}

}  // namespace

TEST_CASE("is_proper") {
    Graph k2 = fx::path(2);
    CHECK(is_proper(k2, Coloring{2, {0, 1}}));
    CHECK_FALSE(is_proper(k2, Coloring{2, {0, 0}}));
    CHECK(is_proper(fx::fig1_graph(), fx::fig1_coloring()));
    CHECK_THROWS_AS(is_proper(k2, Coloring{2, {0}}), InvalidInput);
}

TEST_CASE("cf_shortest_path_exists") {
    SUBCASE("adjacent vertices under a proper coloring") {
        Graph g = fx::cycle(5);
        Coloring f{3, {0, 1, 0, 1, 2}};
        for (auto [u, v] : g.edges()) CHECK(cf_shortest_path_exists(bfs_dag(g, u), f, v));
    }
    SUBCASE("fig1: u to v8 has color 3 exactly once") {
        Graph g = fx::fig1_graph();
        Coloring f = fx::fig1_coloring();
        CHECK(cf_shortest_path_exists(bfs_dag(g, fx::fig1::u), f, fx::fig1::v8));
        CHECK(oracle_cf_path(g, f, fx::fig1::u, fx::fig1::v8));
    }
    SUBCASE("P7 alternating endpoints") {
        CHECK_FALSE(cf_shortest_path_exists(bfs_dag(fx::path(7), 0), alternating(7), 6));
    }
    SUBCASE("unreachable target") {
        Graph g(3, {{0, 1}});
        CHECK_THROWS_AS(cf_shortest_path_exists(bfs_dag(g, 0), Coloring{2, {0, 1, 0}}, 2), InvalidInput);
    }
}

TEST_CASE("verify_strong_cfvc on fixtures") {
    SUBCASE("fig1 reference coloring") {
        auto report = verify_strong_cfvc(fx::fig1_graph(), fx::fig1_coloring());
        CHECK(report.proper);
        CHECK(report.bad_pairs.empty());
        CHECK(report.pairs_checked == 45);
        CHECK(report.strong_cfvc());
    }
    SUBCASE("P7 alternating") {
        auto report = verify_strong_cfvc(fx::path(7), alternating(7));
        CHECK(report.proper);
        CHECK(std::find(report.bad_pairs.begin(), report.bad_pairs.end(), VertexPair{0, 6}) != report.bad_pairs.end());
        CHECK(std::is_sorted(report.bad_pairs.begin(), report.bad_pairs.end()));
        CHECK(report.bad_pairs == verify_strong_cfvc_reference(fx::path(7), alternating(7)).bad_pairs);
    }
    SUBCASE("improper coloring skips the pair scan") {
        auto report = verify_strong_cfvc(fx::path(3), Coloring{2, {0, 0, 1}});
        CHECK_FALSE(report.proper);
        CHECK(report.bad_pairs.empty());
        CHECK_FALSE(report.strong_cfvc());
    }
    SUBCASE("fast fail stops at one pair") {
        auto report = verify_strong_cfvc(fx::path(7), alternating(7), VerifyMode::fast_fail);
        CHECK(report.bad_pairs.size() == 1);
        auto ref = verify_strong_cfvc_reference(fx::path(7), alternating(7), VerifyMode::fast_fail);
        CHECK(ref.bad_pairs.size() == 1);
    }
    SUBCASE("input errors") {
        CHECK_THROWS_AS(verify_strong_cfvc(Graph(2, {}), Coloring{2, {0, 1}}), InvalidInput);
        CHECK_THROWS_AS(verify_strong_cfvc(fx::path(3), Coloring{2, {0, 1}}), InvalidInput);
        CHECK_THROWS_AS(verify_strong_cfvc(fx::path(3), Coloring{2, {0, 1, 2}}), InvalidInput);
    }
    SUBCASE("many colors use the reference path") {
        Graph g = fx::path(12);
        Coloring f{12, std::vector<int>(12)};
        std::iota(f.colors.begin(), f.colors.end(), 0);
        CHECK(verify_strong_cfvc(g, f).strong_cfvc());
    }
}

TEST_CASE("oracle_cf_path") {
    CHECK(oracle_cf_path(fx::path(2), Coloring{2, {0, 1}}, 0, 1));
    CHECK_FALSE(oracle_cf_path(fx::path(7), alternating(7), 0, 6));
    CHECK(oracle_cf_path(fx::cycle(4), Coloring{2, {0, 1, 0, 1}}, 0, 2));
    CHECK_THROWS_AS(oracle_cf_path(fx::path(11), alternating(11), 0, 10), InvalidInput);
    CHECK_FALSE(oracle_cf_path(fx::path(11), alternating(11), 0, 10, 11));
}

TEST_CASE("verifier agrees with the path oracle on small graphs") {
    // Exhaustive over 5-vertex graphs; the 6-vertex sweep lives in the acceptance suite.
    for (int n = 2; n <= 5; ++n) {
        for (const Graph& g : testing::connected_graphs(n)) {
            std::vector<ShortestPathDag> dags;
            for (Vertex u = 0; u < n; ++u) dags.push_back(bfs_dag(g, u));
            testing::for_each_assignment(n, 3, [&](const std::vector<int>& c) {
                Coloring f{3, c};
                if (!is_proper(g, f)) return;
                for (Vertex u = 0; u < n; ++u)
                    for (Vertex v = u + 1; v < n; ++v)
                        REQUIRE(cf_shortest_path_exists(dags[static_cast<std::size_t>(u)], f, v) == oracle_cf_path(g, f, u, v));
            });
        }
    }
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> size(2, 10), colors(2, 4);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = size(rng);
        Graph g = testing::random_connected_graph(n, 0.2, rng);
        Coloring f = testing::random_coloring(n, colors(rng), rng);
        auto report = verify_strong_cfvc_reference(g, f);
        for (Vertex u = 0; u < n; ++u) {
            auto dag = bfs_dag(g, u);
            for (Vertex v = u + 1; v < n; ++v) {
                bool expect = oracle_cf_path(g, f, u, v);
                REQUIRE(cf_shortest_path_exists(dag, f, v) == expect);
                if (report.proper) {
                    bool listed = std::binary_search(report.bad_pairs.begin(), report.bad_pairs.end(), VertexPair{u, v});
                    REQUIRE(listed == !expect);
                }
            }
        }
    }
}

TEST_CASE("kernel-backed and reference verification produce the same report") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        std::uniform_int_distribution<int> size(2, 40), colors(2, 8);
        const int n = size(rng);
        Graph g = testing::random_connected_graph(n, 3.0 / n, rng);
        auto f = testing::random_proper_coloring(g, colors(rng), rng);
        if (!f) continue;
        auto a = verify_strong_cfvc(g, *f);
        auto b = verify_strong_cfvc_reference(g, *f);
        REQUIRE(a.proper == b.proper);
        REQUIRE(a.bad_pairs == b.bad_pairs);
        REQUIRE(a.pairs_checked == b.pairs_checked);
    }
}

TEST_CASE("bad pairs are invariant under color permutation") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        Graph g = testing::random_connected_graph(9, 0.2, rng);
        auto f = testing::random_proper_coloring(g, 3, rng);
        if (!f) continue;
        std::vector<int> perm{0, 1, 2};
        std::shuffle(perm.begin(), perm.end(), rng);
        Coloring h = *f;
        for (auto& c : h.colors) c = perm[static_cast<std::size_t>(c)];
        CHECK(verify_strong_cfvc(g, *f).bad_pairs == verify_strong_cfvc(g, h).bad_pairs);
    }
}

TEST_CASE("pairs at distance at most 2 are never bad under a proper coloring") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        Graph g = testing::random_connected_graph(10, 0.15, rng);
        auto f = testing::random_proper_coloring(g, 3, rng);
        if (!f) continue;
        auto dist = distance_matrix(g);
        for (auto [u, v] : verify_strong_cfvc(g, *f).bad_pairs) REQUIRE(dist[static_cast<std::size_t>(u * 10 + v)] >= 3);
    }
    for (int n = 2; n <= 6; ++n)
        for (const Graph& g : testing::connected_graphs(n)) {
            if (diameter(g) > 2) continue;
            testing::for_each_assignment(n, 3, [&](const std::vector<int>& c) {
                Coloring f{3, c};
                if (is_proper(g, f)) REQUIRE(verify_strong_cfvc(g, f).bad_pairs.empty());
            });
        }
}

TEST_CASE("false twin extension and restriction") {
    std::mt19937_64 rng(31);
    int extended = 0, restricted = 0;
    for (int trial = 0; trial < 3000 && (extended < 50 || restricted < 50); ++trial) {
        std::uniform_int_distribution<int> size(4, 9);
        const int n = size(rng);
        Graph g = testing::random_connected_graph(n, 0.3, rng);
        std::vector<Vertex> all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), 0);
        for (const auto& cls : false_twin_classes(g, all).classes) {
            if (cls.size() < 2) continue;
            const Vertex v = cls[0], u = cls[1];
            const Vertex removed[] = {u};
            Graph smaller = g.without(removed);
            if (!is_connected(smaller)) continue;

            // Extension: coloring of G-u plus f(u) := f(v).
            auto f = testing::random_proper_coloring(smaller, 3, rng);
            if (f && verify_strong_cfvc(smaller, *f).strong_cfvc()) {
                Coloring full{3, {}};
                for (Vertex x = 0, y = 0; x < n; ++x)
                    full.colors.push_back(x == u ? (*f)[v < u ? v : v - 1] : (*f)[y++]);
                CHECK(verify_strong_cfvc(g, full).strong_cfvc());
                ++extended;
            }

            // Restriction: coloring of G with f(u) = f(v), dropped to G-u.
            auto h = testing::random_proper_coloring(g, 3, rng);
            if (h) {
                h->colors[static_cast<std::size_t>(u)] = (*h)[v];
                if (verify_strong_cfvc(g, *h).strong_cfvc()) {
                    Coloring part{3, {}};
                    for (Vertex x = 0; x < n; ++x)
                        if (x != u) part.colors.push_back((*h)[x]);
                    CHECK(verify_strong_cfvc(smaller, part).strong_cfvc());
                    ++restricted;
                }
            }
            break;
        }
    }
    CHECK(extended >= 50);
    CHECK(restricted >= 50);
}

TEST_CASE("coloring and report text formats") {
    Coloring f{3, {0, 2, 1}};
    CHECK(write_coloring(f) == "s cfvc 3 3\nv 1 0\nv 2 2\nv 3 1\n");
    CHECK(parse_coloring("c x\ns cfvc 3 3\nv 3 1\nv 1 0\nv 2 2\n") == f);
    CHECK_THROWS_WITH_AS(parse_coloring("s cfvc 2 2\nv 1 0\nv 1 1\n"), doctest::Contains("line 3"), ParseError);
    CHECK_THROWS_WITH_AS(parse_coloring("s cfvc 2 2\nv 1 0\nv 2 2\n"), doctest::Contains("color out of range"), ParseError);
    CHECK_THROWS_WITH_AS(parse_coloring("s cfvc 2 2\nv 1 0\n"), doctest::Contains("no color"), ParseError);
    CHECK_THROWS_AS(parse_coloring("v 1 0\n"), ParseError);

    VerificationReport report{true, {{0, 6}, {1, 6}}, 21};
    CHECK(write_report(report) == "proper true\nbad 1 7\nbad 2 7\n");
    CHECK(write_report(VerificationReport{false, {}, 0}) == "proper false\n");
}
