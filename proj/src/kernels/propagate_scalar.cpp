#include "cfvc/kernels.hpp"

namespace cfvc::kernels {

bool propagate_scalar(const LaneLayout& layout, std::span<const std::uint8_t> colors, int k,
                      LanePlanes& planes, bool fast_fail) {
    const int n = layout.n;
    const auto lanes = static_cast<std::size_t>(layout.lanes);
    const std::uint8_t* dist = layout.dist.data();
    std::uint8_t* zero = planes.zero.data();
    std::uint8_t* one = planes.one.data();
    std::uint8_t* many = planes.many.data();
    const auto all = static_cast<std::uint8_t>((1u << k) - 1u);

    for (int v = 0; v < n; ++v) {
        const auto bit = static_cast<std::uint8_t>(1u << colors[static_cast<std::size_t>(v)]);
        const std::size_t at = static_cast<std::size_t>(v) * lanes + static_cast<std::size_t>(v);
        zero[at] = static_cast<std::uint8_t>(all & ~bit);
        one[at] = bit;
    }

    bool all_ok = true;
    for (int d = 1; d <= layout.max_dist; ++d) {
        const auto level = static_cast<std::uint8_t>(d);
        const auto prev = static_cast<std::uint8_t>(d - 1);
        bool level_ok = true;
        for (int v = 0; v < n; ++v) {
            if (layout.ecc[static_cast<std::size_t>(v)] < d) continue;
            const std::size_t col_v = static_cast<std::size_t>(v) * lanes;
            const auto bit = static_cast<std::uint8_t>(1u << colors[static_cast<std::size_t>(v)]);
            const int* nb_begin = layout.adj_targets.data() + layout.adj_offsets[static_cast<std::size_t>(v)];
            const int* nb_end = layout.adj_targets.data() + layout.adj_offsets[static_cast<std::size_t>(v) + 1];
            for (int u = 0; u < n; ++u) {
                if (dist[col_v + static_cast<std::size_t>(u)] != level) continue;
                std::uint8_t z = 0, o = 0, t = 0;
                for (const int* w = nb_begin; w != nb_end; ++w) {
                    const std::size_t at = static_cast<std::size_t>(*w) * lanes + static_cast<std::size_t>(u);
                    if (dist[at] != prev) continue;
                    z |= zero[at];
                    o |= one[at];
                    t |= many[at];
                }
                const std::size_t at = col_v + static_cast<std::size_t>(u);
                zero[at] = static_cast<std::uint8_t>(z & ~bit);
                one[at] = static_cast<std::uint8_t>((o & ~bit) | (z & bit));
                many[at] = static_cast<std::uint8_t>(t | (o & bit));
                if (one[at] == 0) level_ok = false;
            }
        }
        if (!level_ok) {
            all_ok = false;
            if (fast_fail) return false;
        }
    }
    return all_ok;
}

}  // namespace cfvc::kernels
