#include "doctest.h"

#include <random>

#include "cfvc/fixtures.hpp"
#include "cfvc/kernels.hpp"
#include "support/oracles.hpp"

using namespace cfvc;
using cfvc::kernels::AllPairsVerifier;
using cfvc::kernels::Isa;

namespace {

std::vector<VertexPair> reference_bad_pairs(const Graph& g, const Coloring& f) {
    std::vector<VertexPair> out;
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
        auto dag = bfs_dag(g, u);
        for (Vertex v = u + 1; v < g.num_vertices(); ++v)
            if (!cf_shortest_path_exists(dag, f, v)) out.emplace_back(u, v);
    }
    return out;
}

}  // namespace

TEST_CASE("isa reporting") {
    CHECK(kernels::isa_available(Isa::scalar));
    CHECK(kernels::isa_name(Isa::scalar) == "scalar");
    CHECK(kernels::isa_name(Isa::avx2) == "avx2");
    MESSAGE("selected kernel: " << kernels::isa_name(kernels::best_isa()));
    AllPairsVerifier forced(fixtures::path(3), Isa::avx2);
    CHECK(forced.isa() == (kernels::isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar));
}

TEST_CASE("layout fits connected graphs only") {
    CHECK(AllPairsVerifier(fixtures::path(5)).fits(3));
    CHECK_FALSE(AllPairsVerifier(fixtures::path(5)).fits(9));
    CHECK_FALSE(AllPairsVerifier(Graph(3, {{0, 1}})).fits(3));
    CHECK_FALSE(AllPairsVerifier(fixtures::path(300)).fits(3));
    AllPairsVerifier wide(fixtures::path(40));
    CHECK(wide.layout().lanes == 64);
    CHECK(wide.layout().max_dist == 39);
}

TEST_CASE("scalar and SIMD kernels agree with the per-source reference") {
    if (!kernels::isa_available(Isa::avx2)) MESSAGE("AVX2 unavailable; checking scalar only");
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 600; ++trial) {
        std::uniform_int_distribution<int> size(1, 90), colors(1, 8);
        const int n = size(rng);
        const int k = colors(rng);
        Graph g = testing::random_connected_graph(n, 2.5 / std::max(n, 1), rng);
        // Improper colorings included: the kernel's path semantics do not depend on properness.
        Coloring f = testing::random_coloring(n, k, rng);
        const auto expect = reference_bad_pairs(g, f);

        AllPairsVerifier scalar(g, Isa::scalar);
        AllPairsVerifier simd(g, Isa::avx2);
        REQUIRE(scalar.fits(k));
        REQUIRE(scalar.bad_pairs(f.colors, k) == expect);
        REQUIRE(simd.bad_pairs(f.colors, k) == expect);
        REQUIRE(scalar.all_conflict_free(f.colors, k) == expect.empty());
        REQUIRE(simd.all_conflict_free(f.colors, k) == expect.empty());

        auto first = simd.bad_pairs(f.colors, k, true);
        REQUIRE(first.size() == (expect.empty() ? 0u : 1u));
        if (!first.empty()) REQUIRE(std::binary_search(expect.begin(), expect.end(), first[0]));
    }
}

TEST_CASE("kernel state is reset between colorings") {
    Graph g = fixtures::path(7);
    AllPairsVerifier verifier(g);
    std::vector<int> bad{0, 1, 0, 1, 0, 1, 0};
    std::vector<int> good{0, 1, 0, 2, 0, 1, 0};
    CHECK_FALSE(verifier.all_conflict_free(bad, 3));
    CHECK(verifier.all_conflict_free(good, 3));
    CHECK_FALSE(verifier.all_conflict_free(bad, 3));
    CHECK(verifier.bad_pairs(good, 3).empty());
}
