#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "collabgraph/collab_graph.hpp"

namespace collabgraph {

using AuthorPath = std::vector<AuthorId>;

struct PathResult {
    AuthorId from;
    AuthorId to;
    std::vector<AuthorPath> paths;  // (hop count, lexicographic) order

    static std::size_t hops(const AuthorPath& path) { return path.empty() ? 0 : path.size() - 1; }
};

inline constexpr std::size_t kDefaultMaxPaths = 6;
inline constexpr std::size_t kDefaultSlack = 1;

/// Minimum-hop path, lexicographically smallest among equals; nullopt when
/// disconnected. Throws Error(unknown_author).
std::optional<AuthorPath> shortest_path(const CollaborationGraph& graph, std::string_view from,
                                        std::string_view to);

/// Up to max_paths simple paths of at most shortest + slack hops, in
/// (hops, lexicographic) order. Throws Error(unknown_author), or
/// Error(invalid_argument) when from == to or max_paths == 0.
PathResult path_selection(const CollaborationGraph& graph, std::string_view from,
                          std::string_view to, std::size_t max_paths = kDefaultMaxPaths,
                          std::size_t slack = kDefaultSlack);

}  // namespace collabgraph
