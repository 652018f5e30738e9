#include "force_kernels_impl.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace collabgraph::simd::detail {

namespace {

// Two rows at a time; each lane runs the scalar loop over j in order.
void repulsion(std::span<const double> xs, std::span<const double> ys, double k_squared,
               std::span<double> fx, std::span<double> fy) {
    const std::size_t n = xs.size();
    const std::size_t vector_end = n - n % 2;
    const float64x2_t k2 = vdupq_n_f64(k_squared);
    const float64x2_t floor = vdupq_n_f64(kMinDistanceSquared);
    for (std::size_t i = 0; i < vector_end; i += 2) {
        const float64x2_t xi = vld1q_f64(xs.data() + i);
        const float64x2_t yi = vld1q_f64(ys.data() + i);
        float64x2_t sx = vdupq_n_f64(0.0);
        float64x2_t sy = vdupq_n_f64(0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const float64x2_t dx = vsubq_f64(xi, vdupq_n_f64(xs[j]));
            const float64x2_t dy = vsubq_f64(yi, vdupq_n_f64(ys[j]));
            const float64x2_t d2 = vaddq_f64(vmulq_f64(dx, dx), vmulq_f64(dy, dy));
            const float64x2_t scale = vdivq_f64(k2, vmaxq_f64(d2, floor));
            sx = vaddq_f64(sx, vmulq_f64(dx, scale));
            sy = vaddq_f64(sy, vmulq_f64(dy, scale));
        }
        vst1q_f64(fx.data() + i, sx);
        vst1q_f64(fy.data() + i, sy);
    }
    repulsion_rows_scalar(xs, ys, k_squared, vector_end, n, fx, fy);
}

void displace(std::span<double> xs, std::span<double> ys, std::span<const double> fx,
              std::span<const double> fy, std::span<const std::uint8_t> pinned, double max_step) {
    const std::size_t n = xs.size();
    const std::size_t vector_end = n - n % 2;
    const float64x2_t step = vdupq_n_f64(max_step);
    for (std::size_t i = 0; i < vector_end; i += 2) {
        const float64x2_t gx = vld1q_f64(fx.data() + i);
        const float64x2_t gy = vld1q_f64(fy.data() + i);
        const float64x2_t length = vsqrtq_f64(vaddq_f64(vmulq_f64(gx, gx), vmulq_f64(gy, gy)));
        const float64x2_t scale = vdivq_f64(vminq_f64(length, step), length);
        const uint64_t free_bits[2] = {pinned[i] ? 0ull : ~0ull, pinned[i + 1] ? 0ull : ~0ull};
        const uint64x2_t moving =
            vandq_u64(vld1q_u64(free_bits), vcgtq_f64(length, vdupq_n_f64(0.0)));
        const float64x2_t x = vld1q_f64(xs.data() + i);
        const float64x2_t y = vld1q_f64(ys.data() + i);
        vst1q_f64(xs.data() + i, vbslq_f64(moving, vaddq_f64(x, vmulq_f64(gx, scale)), x));
        vst1q_f64(ys.data() + i, vbslq_f64(moving, vaddq_f64(y, vmulq_f64(gy, scale)), y));
    }
    displace_rows_scalar(xs, ys, fx, fy, pinned, max_step, vector_end, n);
}

constexpr ForceKernels kNeon{"neon", &repulsion, &displace};

}  // namespace

const ForceKernels* neon_table() noexcept { return &kNeon; }

}  // namespace collabgraph::simd::detail

#else

namespace collabgraph::simd::detail {
const ForceKernels* neon_table() noexcept { return nullptr; }
}  // namespace collabgraph::simd::detail

#endif
