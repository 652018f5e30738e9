#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "collabgraph/collab_graph.hpp"

namespace collabgraph {

inline constexpr std::size_t kPaletteSize = 12;

// Cluster colours, indexed by label mod kPaletteSize.
extern const std::array<std::string_view, kPaletteSize> kClusterPalette;

struct ClusterAssignment {
    std::vector<std::uint32_t> labels;  // per vertex index, contiguous from 0
    std::uint32_t cluster_count = 0;
    std::uint32_t rounds = 0;
    bool converged = false;

    std::uint32_t colour_of(VertexIndex v) const {
        return labels.at(v) % static_cast<std::uint32_t>(kPaletteSize);
    }
};

inline constexpr std::uint32_t kDefaultRestarts = 8;

/// Seeded asynchronous weighted label propagation. Each round visits the
/// vertices in a seed-shuffled order; a vertex adopts the neighbour label with
/// the largest incident weight (ties to the smallest label). A run stops at a
/// fixed point or after max_rounds.
///
/// `restarts` independent runs are made, the first from `seed` itself and the
/// rest from seeds derived from it; the run with the highest modularity wins,
/// earliest first on ties. Labels are renumbered by first appearance in vertex
/// order.
ClusterAssignment detect_communities(const CollaborationGraph& graph, std::uint64_t seed,
                                     std::uint32_t max_rounds = 100,
                                     std::uint32_t restarts = kDefaultRestarts);

/// Newman modularity of a partition. Throws Error(empty_graph) when the graph
/// has no edge weight and Error(invalid_argument) if the assignment does not
/// cover the graph.
double modularity(const CollaborationGraph& graph, const ClusterAssignment& assignment);
double modularity(const CollaborationGraph& graph, std::span<const std::uint32_t> labels);

}  // namespace collabgraph
