#include "collabgraph/simd/force_kernels.hpp"

#include <algorithm>
#include <cmath>

#include "force_kernels_impl.hpp"

namespace collabgraph::simd {

namespace detail {

void repulsion_rows_scalar(std::span<const double> xs, std::span<const double> ys, double k_squared,
                           std::size_t begin, std::size_t end, std::span<double> fx,
                           std::span<double> fy) {
    const std::size_t n = xs.size();
    for (std::size_t i = begin; i < end; ++i) {
        const double xi = xs[i];
        const double yi = ys[i];
        double sx = 0.0;
        double sy = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double dx = xi - xs[j];
            const double dy = yi - ys[j];
            const double d2 = std::max(dx * dx + dy * dy, kMinDistanceSquared);
            const double scale = k_squared / d2;
            sx = sx + dx * scale;
            sy = sy + dy * scale;
        }
        fx[i] = sx;
        fy[i] = sy;
    }
}

void displace_rows_scalar(std::span<double> xs, std::span<double> ys, std::span<const double> fx,
                          std::span<const double> fy, std::span<const std::uint8_t> pinned,
                          double max_step, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
        const double length = std::sqrt(fx[i] * fx[i] + fy[i] * fy[i]);
        if (pinned[i] != 0 || !(length > 0.0)) continue;
        const double scale = std::min(length, max_step) / length;
        xs[i] = xs[i] + fx[i] * scale;
        ys[i] = ys[i] + fy[i] * scale;
    }
}

}  // namespace detail

namespace {

void repulsion(std::span<const double> xs, std::span<const double> ys, double k_squared,
               std::span<double> fx, std::span<double> fy) {
    detail::repulsion_rows_scalar(xs, ys, k_squared, 0, xs.size(), fx, fy);
}

void displace(std::span<double> xs, std::span<double> ys, std::span<const double> fx,
              std::span<const double> fy, std::span<const std::uint8_t> pinned, double max_step) {
    detail::displace_rows_scalar(xs, ys, fx, fy, pinned, max_step, 0, xs.size());
}

constexpr ForceKernels kScalar{"scalar", &repulsion, &displace};

}  // namespace

const ForceKernels& scalar_kernels() noexcept { return kScalar; }

}  // namespace collabgraph::simd
