#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stop_token>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "collabgraph/collab_graph.hpp"
#include "collabgraph/community.hpp"

namespace collabgraph {

// Coordinates are screen-oriented: x grows east, y grows downward, and
// angles are measured clockwise from east.

enum class LayoutIdiom { ego, citation, genealogy, force };

std::string_view to_string(LayoutIdiom idiom) noexcept;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

struct NodePlacement {
    std::string id;
    Point position;
    double display_radius = 1.0;
    std::uint32_t colour = 0;

    friend bool operator==(const NodePlacement&, const NodePlacement&) = default;
};

struct LayoutEdge {
    std::string a;
    std::string b;
    std::uint32_t weight = 1;

    friend bool operator==(const LayoutEdge&, const LayoutEdge&) = default;
};

struct LayoutResult {
    LayoutIdiom idiom = LayoutIdiom::force;
    std::vector<NodePlacement> placements;
    std::vector<LayoutEdge> edges;

    const NodePlacement* find(std::string_view id) const;

    friend bool operator==(const LayoutResult&, const LayoutResult&) = default;
};

// Shared by the ego and citation idioms. Distance from the main author is
// interpolated linearly between base_radius (fewest joint records) and
// min_radius (most); node size likewise between 0.3 and 0.8 of base_size.
// The main author is drawn at base_size.
struct RadialParams {
    double base_radius = 1.0;
    double min_radius = 0.35;
    double base_size = 0.12;
};

/// Centre at the origin; neighbour i of n at angle 360*i/n, neighbours taken
/// in the ego's (count desc, id asc) order.
LayoutResult ego_layout(const EgoSubgraph& ego, const RadialParams& params = {});

struct Citer {
    AuthorId id;
    std::uint32_t count;
};

/// Main author at the origin, citers spread over the 0..90 degree quadrant
/// in (count desc, id asc) order: 90*i/(n-1) degrees, a lone citer at 45.
/// Throws Error(invalid_argument) on counts of 0 or repeated ids.
LayoutResult citation_layout(std::vector<Citer> citers, std::string_view main,
                             const RadialParams& params = {});

inline constexpr std::size_t kDefaultGroupThreshold = 3;

struct TreeParams {
    double level_gap = 1.0;
    double sibling_gap = 1.0;
    double node_size = 0.2;
};

/// Layered tidy tree below `root`. A node's students sharing one institution
/// are hung under an inserted institution node once there are at least
/// group_threshold of them. Children order: direct students ascending by id,
/// then institution groups ascending by institution name.
/// Throws Error(unknown_author) if root is not in the forest.
LayoutResult genealogy_layout(const GenealogyForest& forest, std::string_view root,
                              std::size_t group_threshold = kDefaultGroupThreshold,
                              const TreeParams& params = {});

// Synthetic id of an institution grouping node.
std::string institution_node_id(std::string_view advisor, std::string_view institution);

struct ForceParams {
    std::uint64_t seed = 0;
    std::uint32_t iterations = 300;
    double node_size = 0.1;
    // Pinned authors start at and keep these coordinates.
    std::map<AuthorId, Point> pins{};
};

/// Fruchterman-Reingold spring embedder with weight-scaled attraction and a
/// linear cooling schedule. Without pins the result is translated so the
/// centroid sits at the origin. Colours come from `assignment`, which must
/// cover the graph (Error(invalid_argument) otherwise).
LayoutResult force_layout(const CollaborationGraph& graph, const ClusterAssignment& assignment,
                          const ForceParams& params = {});

/// Cancellable variant: returns nullopt if `stop` is requested before the
/// final iteration completes.
std::optional<LayoutResult> force_layout(const CollaborationGraph& graph,
                                         const ClusterAssignment& assignment,
                                         const ForceParams& params, std::stop_token stop);

}  // namespace collabgraph
