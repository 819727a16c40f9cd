#include "cfvc/kernels.hpp"

#if defined(CFVC_BUILD_AVX2)
#include <immintrin.h>
#endif

namespace cfvc::kernels {

#if defined(CFVC_BUILD_AVX2)

namespace {

inline __m256i load(const std::uint8_t* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store(std::uint8_t* p, __m256i x) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), x); }

}  // namespace

bool propagate_avx2(const LaneLayout& layout, std::span<const std::uint8_t> colors, int k,
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

    const __m256i vzero = _mm256_setzero_si256();
    bool all_ok = true;
    for (int d = 1; d <= layout.max_dist; ++d) {
        const __m256i level = _mm256_set1_epi8(static_cast<char>(d));
        const __m256i prev = _mm256_set1_epi8(static_cast<char>(d - 1));
        int bad_bits = 0;
        for (int v = 0; v < n; ++v) {
            if (layout.ecc[static_cast<std::size_t>(v)] < d) continue;
            const std::size_t col_v = static_cast<std::size_t>(v) * lanes;
            const __m256i bit = _mm256_set1_epi8(static_cast<char>(1u << colors[static_cast<std::size_t>(v)]));
            const int* nb_begin = layout.adj_targets.data() + layout.adj_offsets[static_cast<std::size_t>(v)];
            const int* nb_end = layout.adj_targets.data() + layout.adj_offsets[static_cast<std::size_t>(v) + 1];
            for (std::size_t j = 0; j < lanes; j += kLaneBlock) {
                const __m256i on_level = _mm256_cmpeq_epi8(load(dist + col_v + j), level);
                if (_mm256_testz_si256(on_level, on_level)) continue;
                __m256i z = vzero, o = vzero, t = vzero;
                for (const int* w = nb_begin; w != nb_end; ++w) {
                    const std::size_t col_w = static_cast<std::size_t>(*w) * lanes + j;
                    const __m256i m = _mm256_and_si256(on_level, _mm256_cmpeq_epi8(load(dist + col_w), prev));
                    z = _mm256_or_si256(z, _mm256_and_si256(m, load(zero + col_w)));
                    o = _mm256_or_si256(o, _mm256_and_si256(m, load(one + col_w)));
                    t = _mm256_or_si256(t, _mm256_and_si256(m, load(many + col_w)));
                }
                const __m256i z2 = _mm256_andnot_si256(bit, z);
                const __m256i o2 = _mm256_or_si256(_mm256_andnot_si256(bit, o), _mm256_and_si256(z, bit));
                const __m256i t2 = _mm256_or_si256(t, _mm256_and_si256(o, bit));
                // Lanes off this level carry zeros, so OR-ing keeps them intact.
                store(zero + col_v + j, _mm256_or_si256(load(zero + col_v + j), z2));
                store(one + col_v + j, _mm256_or_si256(load(one + col_v + j), o2));
                store(many + col_v + j, _mm256_or_si256(load(many + col_v + j), t2));
                bad_bits |= _mm256_movemask_epi8(_mm256_and_si256(on_level, _mm256_cmpeq_epi8(o2, vzero)));
            }
        }
        if (bad_bits != 0) {
            all_ok = false;
            if (fast_fail) return false;
        }
    }
    return all_ok;
}

#else

bool propagate_avx2(const LaneLayout& layout, std::span<const std::uint8_t> colors, int k,
                    LanePlanes& planes, bool fast_fail) {
    return propagate_scalar(layout, colors, k, planes, fast_fail);
}

#endif

}  // namespace cfvc::kernels
