#include <cstdlib>
#include <string_view>

#include "collabgraph/simd/force_kernels.hpp"
#include "force_kernels_impl.hpp"

namespace collabgraph::simd {

const ForceKernels* avx2_kernels() noexcept { return detail::avx2_table(); }
const ForceKernels* neon_kernels() noexcept { return detail::neon_table(); }

const ForceKernels& active_kernels() noexcept {
    static const ForceKernels& selected = [] () -> const ForceKernels& {
        const char* requested = std::getenv("COLLABGRAPH_SIMD");
        if (requested && std::string_view(requested) == "scalar") return scalar_kernels();
        if (const auto* k = avx2_kernels()) return *k;
        if (const auto* k = neon_kernels()) return *k;
        return scalar_kernels();
    }();
    return selected;
}

std::vector<const ForceKernels*> available_kernels() {
    std::vector<const ForceKernels*> out{&scalar_kernels()};
    if (const auto* k = avx2_kernels()) out.push_back(k);
    if (const auto* k = neon_kernels()) out.push_back(k);
    return out;
}

}  // namespace collabgraph::simd
