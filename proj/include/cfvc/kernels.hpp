#pragma once

// All-pairs conflict-free shortest path kernel.
//
// Every source vertex u owns one byte lane. For a target v the lane holds
// three color bitmasks over the shortest u,v-paths:
//   zero[c]  some path avoids color c
//   one[c]   some path has color c exactly once
//   many[c]  some path has color c at least twice
// Targets are settled level by level (dist = 1, 2, ...), OR-ing the lanes of
// neighbors one level closer and then shifting the counts of v's own color.
// The pair (u,v) is conflict-free iff one != 0.
//
// The scalar variant is the reference; the AVX2 variant processes 32 lanes
// per instruction and is chosen at runtime when the CPU supports it.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "cfvc/graph.hpp"
#include "cfvc/verify.hpp"

namespace cfvc::kernels {

enum class Isa { scalar, avx2 };

bool isa_available(Isa isa) noexcept;
/// Widest available ISA, unless CFVC_KERNEL=scalar is set in the environment.
Isa best_isa() noexcept;
std::string_view isa_name(Isa isa) noexcept;

/// Colors handled by the byte-lane kernel.
inline constexpr int kMaxKernelColors = 8;
inline constexpr int kLaneBlock = 32;

/// Precomputed lane layout of a connected graph; reusable across colorings.
struct LaneLayout {
    int n = 0;
    int lanes = 0;  // n rounded up to kLaneBlock
    int max_dist = 0;
    std::vector<std::uint8_t> dist;       // n * lanes, column v = dist(., v); 255 = padding
    std::vector<int> ecc;                 // eccentricity per vertex
    std::vector<int> adj_offsets;         // CSR
    std::vector<int> adj_targets;
};

/// Byte-lane state planes, one column per target vertex.
struct LanePlanes {
    std::vector<std::uint8_t> zero, one, many;
    void reset(const LaneLayout& layout);
};

/// Kernel entry: propagates all levels for `colors` (values < k <= 8).
/// With `fast_fail` it stops after the first level containing a bad pair
/// and returns false; otherwise returns whether every pair is conflict-free.
using PropagateFn = bool (*)(const LaneLayout&, std::span<const std::uint8_t> colors, int k,
                             LanePlanes& planes, bool fast_fail);

bool propagate_scalar(const LaneLayout&, std::span<const std::uint8_t>, int, LanePlanes&, bool);
bool propagate_avx2(const LaneLayout&, std::span<const std::uint8_t>, int, LanePlanes&, bool);

PropagateFn select(Isa isa) noexcept;

/// Verifier bound to one graph; amortizes the distance layout over many
/// colorings (the solver's inner loop). Not thread-safe; use one per thread.
class AllPairsVerifier {
public:
    /// Returns false from fits() when the graph is too deep for byte
    /// distances (diameter > 254) or disconnected.
    explicit AllPairsVerifier(const Graph& g, Isa isa = best_isa());

    bool fits(int k) const noexcept { return fits_ && k >= 1 && k <= kMaxKernelColors; }
    Isa isa() const noexcept { return isa_; }
    const LaneLayout& layout() const noexcept { return layout_; }

    /// Assumes a proper coloring with values < k.
    bool all_conflict_free(std::span<const int> colors, int k);
    /// Sorted (u < v) bad pairs; empty when the coloring is strong cfvc.
    std::vector<VertexPair> bad_pairs(std::span<const int> colors, int k, bool fast_fail = false);

private:
    void load(std::span<const int> colors);

    LaneLayout layout_;
    LanePlanes planes_;
    std::vector<std::uint8_t> colors8_;
    Isa isa_;
    PropagateFn fn_;
    bool fits_ = false;
};

}  // namespace cfvc::kernels
