#pragma once

// Inner loops of the spring embedder. Every variant vectorises across the
// outer vertex index and keeps the scalar operation order per lane, so all
// variants return bit-identical results.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace collabgraph::simd {

// Squared distances below this are clamped before division.
inline constexpr double kMinDistanceSquared = 1e-12;

// fx[i] = sum_j (x[i] - x[j]) * k2 / max(d2(i, j), kMinDistanceSquared), same for y.
using RepulsionFn = void (*)(std::span<const double> xs, std::span<const double> ys,
                             double k_squared, std::span<double> fx, std::span<double> fy);

// Moves each unpinned vertex along (fx, fy) by min(|f|, max_step).
using DisplaceFn = void (*)(std::span<double> xs, std::span<double> ys,
                            std::span<const double> fx, std::span<const double> fy,
                            std::span<const std::uint8_t> pinned, double max_step);

struct ForceKernels {
    std::string_view name;
    RepulsionFn repulsion;
    DisplaceFn displace;
};

const ForceKernels& scalar_kernels() noexcept;

// nullptr when the variant is not compiled in or the CPU lacks support.
const ForceKernels* avx2_kernels() noexcept;
const ForceKernels* neon_kernels() noexcept;

// Best supported variant; COLLABGRAPH_SIMD=scalar forces the reference path.
const ForceKernels& active_kernels() noexcept;

std::vector<const ForceKernels*> available_kernels();

}  // namespace collabgraph::simd
