#include "collabgraph/pathfinder.hpp"

#include <algorithm>
#include <set>

#include "collabgraph/error.hpp"
#include "collabgraph/metrics.hpp"

namespace collabgraph {

namespace {

using IndexPath = std::vector<VertexIndex>;

// Shorter first, then lexicographic. Vertex indices follow id order, so this
// is also the lexicographic order of the author-id sequences.
struct PathOrder {
    bool operator()(const IndexPath& x, const IndexPath& y) const {
        return x.size() != y.size() ? x.size() < y.size() : x < y;
    }
};

// Lexicographically smallest minimum-hop path from `from` to `to` avoiding
// `blocked` vertices and the edges from `from` to any vertex in `cut`.
std::optional<IndexPath> smallest_shortest_path(const CollaborationGraph& graph, VertexIndex from,
                                                VertexIndex to, const std::vector<bool>& blocked,
                                                const std::vector<VertexIndex>& cut) {
    auto is_cut = [&](VertexIndex u, VertexIndex w) {
        if (u == from) return std::binary_search(cut.begin(), cut.end(), w);
        if (w == from) return std::binary_search(cut.begin(), cut.end(), u);
        return false;
    };
    std::vector<std::uint32_t> distance(graph.vertex_count(), kUnreachable);
    std::vector<VertexIndex> frontier{to};
    std::vector<VertexIndex> next;
    distance[to] = 0;
    for (std::uint32_t level = 1; !frontier.empty() && distance[from] == kUnreachable; ++level) {
        next.clear();
        for (auto u : frontier) {
            for (auto w : graph.neighbours(u)) {
                if (blocked[w] || distance[w] != kUnreachable || is_cut(u, w)) continue;
                distance[w] = level;
                next.push_back(w);
            }
        }
        frontier.swap(next);
    }
    if (distance[from] == kUnreachable) return std::nullopt;

    IndexPath path{from};
    for (auto current = from; current != to;) {
        for (auto w : graph.neighbours(current)) {
            if (distance[w] == distance[current] - 1 && !blocked[w] && !is_cut(current, w)) {
                current = w;
                break;
            }
        }
        path.push_back(current);
    }
    return path;
}

AuthorPath to_ids(const CollaborationGraph& graph, const IndexPath& path) {
    AuthorPath out;
    out.reserve(path.size());
    for (auto v : path) out.push_back(graph.id_of(v));
    return out;
}

}  // namespace

std::optional<AuthorPath> shortest_path(const CollaborationGraph& graph, std::string_view from,
                                        std::string_view to) {
    const auto a = graph.require(from);
    const auto b = graph.require(to);
    if (a == b) return AuthorPath{graph.id_of(a)};
    std::vector<bool> blocked(graph.vertex_count(), false);
    auto path = smallest_shortest_path(graph, a, b, blocked, {});
    if (!path) return std::nullopt;
    return to_ids(graph, *path);
}

PathResult path_selection(const CollaborationGraph& graph, std::string_view from, std::string_view to,
                          std::size_t max_paths, std::size_t slack) {
    const auto a = graph.require(from);
    const auto b = graph.require(to);
    if (a == b) throw Error(ErrorCode::invalid_argument, "path endpoints must differ");
    if (max_paths == 0) throw Error(ErrorCode::invalid_argument, "max_paths must be positive");

    PathResult result{graph.id_of(a), graph.id_of(b), {}};
    std::vector<bool> blocked(graph.vertex_count(), false);
    auto first = smallest_shortest_path(graph, a, b, blocked, {});
    if (!first) return result;
    const std::size_t max_vertices = first->size() + slack;

    // Yen's algorithm under the (hops, lexicographic) total order.
    std::vector<IndexPath> accepted{*first};
    std::set<IndexPath, PathOrder> seen{*first};
    std::set<IndexPath, PathOrder> candidates;
    while (accepted.size() < max_paths) {
        const IndexPath previous = accepted.back();
        for (std::size_t i = 0; i + 1 < previous.size(); ++i) {
            const auto spur = previous[i];
            std::vector<VertexIndex> cut;
            for (const auto& path : accepted) {
                if (path.size() > i + 1 && std::equal(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                                      previous.begin())) {
                    cut.push_back(path[i + 1]);
                }
            }
            std::sort(cut.begin(), cut.end());
            cut.erase(std::unique(cut.begin(), cut.end()), cut.end());
            for (std::size_t j = 0; j < i; ++j) blocked[previous[j]] = true;
            auto tail = smallest_shortest_path(graph, spur, b, blocked, cut);
            for (std::size_t j = 0; j < i; ++j) blocked[previous[j]] = false;
            if (!tail || i + tail->size() > max_vertices) continue;

            IndexPath candidate(previous.begin(), previous.begin() + static_cast<std::ptrdiff_t>(i));
            candidate.insert(candidate.end(), tail->begin(), tail->end());
            if (!seen.contains(candidate)) candidates.insert(std::move(candidate));
        }
        if (candidates.empty()) break;
        auto best = candidates.extract(candidates.begin()).value();
        seen.insert(best);
        accepted.push_back(std::move(best));
    }
    for (const auto& path : accepted) result.paths.push_back(to_ids(graph, path));
    return result;
}

}  // namespace collabgraph
