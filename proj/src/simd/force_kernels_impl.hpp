#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "collabgraph/simd/force_kernels.hpp"

namespace collabgraph::simd::detail {

// Scalar row kernels, also used for the remainder rows of vector variants.
void repulsion_rows_scalar(std::span<const double> xs, std::span<const double> ys, double k_squared,
                           std::size_t begin, std::size_t end, std::span<double> fx,
                           std::span<double> fy);

void displace_rows_scalar(std::span<double> xs, std::span<double> ys, std::span<const double> fx,
                          std::span<const double> fy, std::span<const std::uint8_t> pinned,
                          double max_step, std::size_t begin, std::size_t end);

const ForceKernels* avx2_table() noexcept;
const ForceKernels* neon_table() noexcept;

}  // namespace collabgraph::simd::detail
