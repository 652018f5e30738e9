#include "collabgraph/layout.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "collabgraph/error.hpp"
#include "collabgraph/simd/force_kernels.hpp"

namespace collabgraph {

namespace {

struct Span {
    std::uint32_t low;
    std::uint32_t high;

    // 0 for the largest count, 1 for the smallest; all equal counts sit at 1.
    double farness(std::uint32_t count) const {
        if (high == low) return 1.0;
        return static_cast<double>(high - count) / static_cast<double>(high - low);
    }
};

template <typename Range, typename Count>
Span count_span(const Range& items, Count count) {
    Span span{UINT32_MAX, 0};
    for (const auto& item : items) {
        span.low = std::min(span.low, count(item));
        span.high = std::max(span.high, count(item));
    }
    return span;
}

double radial_distance(const RadialParams& params, double farness) {
    return params.min_radius + (params.base_radius - params.min_radius) * farness;
}

double node_size(const RadialParams& params, double farness) {
    return params.base_size * (0.3 + 0.5 * (1.0 - farness));
}

Point polar(double radius, double angle) {
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace

std::string_view to_string(LayoutIdiom idiom) noexcept {
    switch (idiom) {
        case LayoutIdiom::ego: return "ego";
        case LayoutIdiom::citation: return "citation";
        case LayoutIdiom::genealogy: return "genealogy";
        case LayoutIdiom::force: return "force";
    }
    return "force";
}

const NodePlacement* LayoutResult::find(std::string_view id) const {
    for (const auto& placement : placements) {
        if (placement.id == id) return &placement;
    }
    return nullptr;
}

LayoutResult ego_layout(const EgoSubgraph& ego, const RadialParams& params) {
    LayoutResult result;
    result.idiom = LayoutIdiom::ego;
    result.placements.push_back({ego.center, {0.0, 0.0}, params.base_size, 0});

    const auto span = count_span(ego.neighbours, [](const EgoNeighbour& n) { return n.joint_count; });
    const double n = static_cast<double>(ego.neighbours.size());
    for (std::size_t i = 0; i < ego.neighbours.size(); ++i) {
        const auto& neighbour = ego.neighbours[i];
        const double farness = span.farness(neighbour.joint_count);
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / n;
        result.placements.push_back({neighbour.id, polar(radial_distance(params, farness), angle),
                                     node_size(params, farness), 1});
        result.edges.push_back({ego.center, neighbour.id, neighbour.joint_count});
    }
    for (const auto& edge : ego.edges) result.edges.push_back({edge.a, edge.b, edge.weight});
    return result;
}

LayoutResult citation_layout(std::vector<Citer> citers, std::string_view main, const RadialParams& params) {
    std::set<std::string_view> ids;
    for (const auto& citer : citers) {
        if (citer.count == 0) throw Error(ErrorCode::invalid_argument, "citer " + citer.id + " has count 0");
        if (citer.id == main || !ids.insert(citer.id).second)
            throw Error(ErrorCode::invalid_argument, "citer " + citer.id + " repeated");
    }
    std::sort(citers.begin(), citers.end(), [](const Citer& x, const Citer& y) {
        return x.count != y.count ? x.count > y.count : x.id < y.id;
    });

    LayoutResult result;
    result.idiom = LayoutIdiom::citation;
    result.placements.push_back({std::string(main), {0.0, 0.0}, params.base_size, 0});
    const auto span = count_span(citers, [](const Citer& c) { return c.count; });
    const double quarter = std::numbers::pi / 2.0;
    for (std::size_t i = 0; i < citers.size(); ++i) {
        const double angle = citers.size() == 1
                                 ? quarter / 2.0
                                 : quarter * static_cast<double>(i) / static_cast<double>(citers.size() - 1);
        const double farness = span.farness(citers[i].count);
        result.placements.push_back({citers[i].id, polar(radial_distance(params, farness), angle),
                                     node_size(params, farness), 1});
        result.edges.push_back({citers[i].id, std::string(main), citers[i].count});
    }
    return result;
}

std::string institution_node_id(std::string_view advisor, std::string_view institution) {
    return "institution:" + std::string(advisor) + "/" + std::string(institution);
}

namespace {

struct TreeNode {
    std::string id;
    bool institution = false;
    std::vector<TreeNode> children;
};

TreeNode grow(const GenealogyForest& forest, const AuthorId& id, std::size_t threshold) {
    TreeNode node{id, false, {}};
    auto it = forest.students_of.find(id);
    if (it == forest.students_of.end()) return node;

    std::map<std::string, std::vector<AuthorId>> by_institution;
    for (const auto& student : it->second) {
        const auto& place = forest.institution.at(student);
        if (place) by_institution[*place].push_back(student);
    }
    std::set<AuthorId> grouped;
    std::vector<TreeNode> groups;
    for (const auto& [place, students] : by_institution) {
        if (students.size() < threshold) continue;
        TreeNode group{institution_node_id(id, place), true, {}};
        for (const auto& student : students) {
            group.children.push_back(grow(forest, student, threshold));
            grouped.insert(student);
        }
        groups.push_back(std::move(group));
    }
    for (const auto& student : it->second) {
        if (!grouped.contains(student)) node.children.push_back(grow(forest, student, threshold));
    }
    for (auto& group : groups) node.children.push_back(std::move(group));
    return node;
}

double place(const TreeNode& node, std::size_t depth, const TreeParams& params, double& next_slot,
             LayoutResult& out) {
    double x = 0.0;
    if (node.children.empty()) {
        x = next_slot;
        next_slot += params.sibling_gap;
    } else {
        const double first = place(node.children.front(), depth + 1, params, next_slot, out);
        double last = first;
        for (std::size_t i = 1; i < node.children.size(); ++i) {
            last = place(node.children[i], depth + 1, params, next_slot, out);
        }
        x = (first + last) / 2.0;
    }
    for (const auto& child : node.children) out.edges.push_back({node.id, child.id, 1});
    const double size = node.institution ? params.node_size * 0.6 : params.node_size;
    out.placements.push_back({node.id,
                              {x, static_cast<double>(depth) * params.level_gap},
                              size,
                              static_cast<std::uint32_t>(depth % kPaletteSize)});
    return x;
}

}  // namespace

LayoutResult genealogy_layout(const GenealogyForest& forest, std::string_view root,
                              std::size_t group_threshold, const TreeParams& params) {
    if (!forest.contains(root))
        throw Error(ErrorCode::unknown_author, "author " + std::string(root) + " is not in the genealogy");
    if (group_threshold == 0) throw Error(ErrorCode::invalid_argument, "group threshold must be positive");
    const auto tree = grow(forest, std::string(root), group_threshold);

    LayoutResult result;
    result.idiom = LayoutIdiom::genealogy;
    double next_slot = 0.0;
    place(tree, 0, params, next_slot, result);
    // Pre-order reads better than the post-order the recursion produced.
    std::vector<NodePlacement> ordered;
    ordered.reserve(result.placements.size());
    std::vector<const TreeNode*> stack{&tree};
    std::map<std::string_view, const NodePlacement*> by_id;
    for (const auto& p : result.placements) by_id[p.id] = &p;
    while (!stack.empty()) {
        const auto* node = stack.back();
        stack.pop_back();
        ordered.push_back(*by_id.at(node->id));
        for (auto it = node->children.rbegin(); it != node->children.rend(); ++it) stack.push_back(&*it);
    }
    result.placements = std::move(ordered);
    std::stable_sort(result.edges.begin(), result.edges.end(), [&](const LayoutEdge& x, const LayoutEdge& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    return result;
}

std::optional<LayoutResult> force_layout(const CollaborationGraph& graph, const ClusterAssignment& assignment,
                                         const ForceParams& params, std::stop_token stop) {
    const std::size_t n = graph.vertex_count();
    if (assignment.labels.size() != n)
        throw Error(ErrorCode::invalid_argument, "cluster assignment does not cover the graph");
    for (const auto& [id, point] : params.pins) {
        if (!graph.contains(id)) throw Error(ErrorCode::unknown_author, "cannot pin unknown author " + id);
        if (!std::isfinite(point.x) || !std::isfinite(point.y))
            throw Error(ErrorCode::invalid_argument, "pin for " + id + " is not finite");
    }

    // Unit ideal edge length on a sqrt(n) x sqrt(n) frame.
    const double side = std::sqrt(static_cast<double>(std::max<std::size_t>(n, 1)));
    const double ideal = 1.0;
    const double start_temperature = std::max(side / 10.0, 0.1);

    std::vector<double> xs(n);
    std::vector<double> ys(n);
    std::vector<std::uint8_t> pinned(n, 0);
    std::mt19937_64 rng(params.seed);
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1p-53; };
    for (std::size_t v = 0; v < n; ++v) {
        xs[v] = (unit() - 0.5) * side;
        ys[v] = (unit() - 0.5) * side;
    }
    for (const auto& [id, point] : params.pins) {
        const auto v = *graph.index_of(id);
        xs[v] = point.x;
        ys[v] = point.y;
        pinned[v] = 1;
    }

    const auto& kernels = simd::active_kernels();
    const auto edges = graph.edges();
    std::vector<double> fx(n);
    std::vector<double> fy(n);
    for (std::uint32_t iteration = 0; iteration < params.iterations; ++iteration) {
        if (stop.stop_requested()) return std::nullopt;
        kernels.repulsion(xs, ys, ideal * ideal, fx, fy);
        for (const auto& e : edges) {
            const double dx = xs[e.a] - xs[e.b];
            const double dy = ys[e.a] - ys[e.b];
            const double scale = static_cast<double>(e.weight) * std::sqrt(dx * dx + dy * dy) / ideal;
            fx[e.a] -= dx * scale;
            fy[e.a] -= dy * scale;
            fx[e.b] += dx * scale;
            fy[e.b] += dy * scale;
        }
        const double cooling = 1.0 - static_cast<double>(iteration) / static_cast<double>(params.iterations);
        kernels.displace(xs, ys, fx, fy, pinned, start_temperature * cooling);
    }
    if (stop.stop_requested()) return std::nullopt;

    if (params.pins.empty() && n > 0) {
        double cx = 0.0;
        double cy = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            cx += xs[v];
            cy += ys[v];
        }
        cx /= static_cast<double>(n);
        cy /= static_cast<double>(n);
        for (std::size_t v = 0; v < n; ++v) {
            xs[v] -= cx;
            ys[v] -= cy;
        }
    }

    LayoutResult result;
    result.idiom = LayoutIdiom::force;
    result.placements.reserve(n);
    for (VertexIndex v = 0; v < n; ++v) {
        result.placements.push_back({graph.id_of(v), {xs[v], ys[v]}, params.node_size, assignment.colour_of(v)});
    }
    result.edges.reserve(edges.size());
    for (const auto& e : edges) result.edges.push_back({graph.id_of(e.a), graph.id_of(e.b), e.weight});
    return result;
}

LayoutResult force_layout(const CollaborationGraph& graph, const ClusterAssignment& assignment,
                          const ForceParams& params) {
    return *force_layout(graph, assignment, params, std::stop_token{});
}

}  // namespace collabgraph
