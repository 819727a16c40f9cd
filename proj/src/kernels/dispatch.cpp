#include <algorithm>
#include <cstdlib>
#include <string_view>

#include "cfvc/kernels.hpp"

namespace cfvc::kernels {

bool isa_available(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar:
        return true;
    case Isa::avx2:
#if defined(CFVC_BUILD_AVX2)
        return __builtin_cpu_supports("avx2") != 0;
#else
        return false;
#endif
    }
    return false;
}

Isa best_isa() noexcept {
    if (const char* forced = std::getenv("CFVC_KERNEL"); forced && std::string_view(forced) == "scalar")
        return Isa::scalar;
    return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::string_view isa_name(Isa isa) noexcept {
    return isa == Isa::avx2 ? "avx2" : "scalar";
}

PropagateFn select(Isa isa) noexcept {
    if (isa == Isa::avx2 && isa_available(Isa::avx2)) return &propagate_avx2;
    return &propagate_scalar;
}

void LanePlanes::reset(const LaneLayout& layout) {
    const auto size = static_cast<std::size_t>(layout.n) * static_cast<std::size_t>(layout.lanes);
    zero.assign(size, 0);
    one.assign(size, 0);
    many.assign(size, 0);
}

AllPairsVerifier::AllPairsVerifier(const Graph& g, Isa isa)
    : isa_(isa_available(isa) ? isa : Isa::scalar), fn_(select(isa_)) {
    const int n = g.num_vertices();
    layout_.n = n;
    layout_.lanes = std::max(kLaneBlock, (n + kLaneBlock - 1) / kLaneBlock * kLaneBlock);
    layout_.dist.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(layout_.lanes), 255);
    layout_.ecc.assign(static_cast<std::size_t>(n), 0);
    layout_.adj_offsets.assign(1, 0);
    for (Vertex v = 0; v < n; ++v) {
        for (Vertex w : g.neighbors(v)) layout_.adj_targets.push_back(w);
        layout_.adj_offsets.push_back(static_cast<int>(layout_.adj_targets.size()));
    }
    fits_ = n >= 1;
    for (Vertex v = 0; v < n && fits_; ++v) {
        auto dist = bfs_distances(g, v);
        for (Vertex u = 0; u < n; ++u) {
            int d = dist[static_cast<std::size_t>(u)];
            if (d == kUnreachable || d > 254) {
                fits_ = false;
                break;
            }
            layout_.dist[static_cast<std::size_t>(v) * static_cast<std::size_t>(layout_.lanes) +
                         static_cast<std::size_t>(u)] = static_cast<std::uint8_t>(d);
            layout_.ecc[static_cast<std::size_t>(v)] = std::max(layout_.ecc[static_cast<std::size_t>(v)], d);
        }
    }
    if (fits_) layout_.max_dist = *std::max_element(layout_.ecc.begin(), layout_.ecc.end());
}

void AllPairsVerifier::load(std::span<const int> colors) {
    colors8_.resize(colors.size());
    std::transform(colors.begin(), colors.end(), colors8_.begin(),
                   [](int c) { return static_cast<std::uint8_t>(c); });
    planes_.reset(layout_);
}

bool AllPairsVerifier::all_conflict_free(std::span<const int> colors, int k) {
    load(colors);
    return fn_(layout_, colors8_, k, planes_, true);
}

std::vector<VertexPair> AllPairsVerifier::bad_pairs(std::span<const int> colors, int k, bool fast_fail) {
    load(colors);
    std::vector<VertexPair> out;
    if (fn_(layout_, colors8_, k, planes_, fast_fail)) return out;
    const auto lanes = static_cast<std::size_t>(layout_.lanes);
    for (Vertex v = 0; v < layout_.n; ++v) {
        for (Vertex u = 0; u < v; ++u) {
            const std::size_t at = static_cast<std::size_t>(v) * lanes + static_cast<std::size_t>(u);
            // Under fast-fail, levels past the failing one were never filled.
            if (planes_.one[at] == 0 && (planes_.zero[at] | planes_.many[at]) != 0) out.emplace_back(u, v);
        }
    }
    std::sort(out.begin(), out.end());
    if (fast_fail && out.size() > 1) out.resize(1);
    return out;
}

}  // namespace cfvc::kernels
