#include "force_kernels_impl.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

#include <cstring>

namespace collabgraph::simd::detail {

namespace {

// Four rows at a time; each lane runs the scalar loop over j in order.
__attribute__((target("avx2"))) void repulsion(std::span<const double> xs,
                                               std::span<const double> ys, double k_squared,
                                               std::span<double> fx, std::span<double> fy) {
    const std::size_t n = xs.size();
    const std::size_t vector_end = n - n % 4;
    const __m256d k2 = _mm256_set1_pd(k_squared);
    const __m256d floor = _mm256_set1_pd(kMinDistanceSquared);
    for (std::size_t i = 0; i < vector_end; i += 4) {
        const __m256d xi = _mm256_loadu_pd(xs.data() + i);
        const __m256d yi = _mm256_loadu_pd(ys.data() + i);
        __m256d sx = _mm256_setzero_pd();
        __m256d sy = _mm256_setzero_pd();
        for (std::size_t j = 0; j < n; ++j) {
            const __m256d dx = _mm256_sub_pd(xi, _mm256_set1_pd(xs[j]));
            const __m256d dy = _mm256_sub_pd(yi, _mm256_set1_pd(ys[j]));
            const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
            const __m256d clamped = _mm256_max_pd(d2, floor);
            const __m256d scale = _mm256_div_pd(k2, clamped);
            sx = _mm256_add_pd(sx, _mm256_mul_pd(dx, scale));
            sy = _mm256_add_pd(sy, _mm256_mul_pd(dy, scale));
        }
        _mm256_storeu_pd(fx.data() + i, sx);
        _mm256_storeu_pd(fy.data() + i, sy);
    }
    repulsion_rows_scalar(xs, ys, k_squared, vector_end, n, fx, fy);
}

__attribute__((target("avx2"))) void displace(std::span<double> xs, std::span<double> ys,
                                              std::span<const double> fx,
                                              std::span<const double> fy,
                                              std::span<const std::uint8_t> pinned,
                                              double max_step) {
    const std::size_t n = xs.size();
    const std::size_t vector_end = n - n % 4;
    const __m256d step = _mm256_set1_pd(max_step);
    const __m256d zero = _mm256_setzero_pd();
    for (std::size_t i = 0; i < vector_end; i += 4) {
        const __m256d gx = _mm256_loadu_pd(fx.data() + i);
        const __m256d gy = _mm256_loadu_pd(fy.data() + i);
        const __m256d length =
            _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(gx, gx), _mm256_mul_pd(gy, gy)));
        const __m256d scale = _mm256_div_pd(_mm256_min_pd(length, step), length);

        std::int32_t packed = 0;
        std::memcpy(&packed, pinned.data() + i, 4);
        const __m256i pin_lanes = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(packed));
        const __m256d free_lanes =
            _mm256_castsi256_pd(_mm256_cmpeq_epi64(pin_lanes, _mm256_setzero_si256()));
        const __m256d moving = _mm256_and_pd(free_lanes, _mm256_cmp_pd(length, zero, _CMP_GT_OQ));

        const __m256d x = _mm256_loadu_pd(xs.data() + i);
        const __m256d y = _mm256_loadu_pd(ys.data() + i);
        const __m256d nx = _mm256_add_pd(x, _mm256_mul_pd(gx, scale));
        const __m256d ny = _mm256_add_pd(y, _mm256_mul_pd(gy, scale));
        _mm256_storeu_pd(xs.data() + i, _mm256_blendv_pd(x, nx, moving));
        _mm256_storeu_pd(ys.data() + i, _mm256_blendv_pd(y, ny, moving));
    }
    displace_rows_scalar(xs, ys, fx, fy, pinned, max_step, vector_end, n);
}

constexpr ForceKernels kAvx2{"avx2", &repulsion, &displace};

}  // namespace

const ForceKernels* avx2_table() noexcept {
    return __builtin_cpu_supports("avx2") ? &kAvx2 : nullptr;
}

}  // namespace collabgraph::simd::detail

#else

namespace collabgraph::simd::detail {
const ForceKernels* avx2_table() noexcept { return nullptr; }
}  // namespace collabgraph::simd::detail

#endif
