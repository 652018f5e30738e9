#include "collabgraph/community.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "collabgraph/error.hpp"

namespace collabgraph {

const std::array<std::string_view, kPaletteSize> kClusterPalette = {
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
    "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f",
};

namespace {

// Unbiased draw in [0, bound). Written out rather than using
// std::uniform_int_distribution, whose output differs between standard libraries.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

void shuffle(std::vector<VertexIndex>& order, std::mt19937_64& rng) {
    for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[bounded(rng, i)]);
    }
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

ClusterAssignment propagate(const CollaborationGraph& graph, std::uint64_t seed, std::uint32_t max_rounds) {
    const auto n = graph.vertex_count();
    ClusterAssignment result;
    std::vector<std::uint32_t> labels(n);
    std::iota(labels.begin(), labels.end(), 0u);
    std::vector<VertexIndex> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::vector<std::uint64_t> label_weight(n, 0);
    std::vector<std::uint32_t> touched;
    std::mt19937_64 rng(seed);

    while (result.rounds < max_rounds) {
        ++result.rounds;
        shuffle(order, rng);
        bool changed = false;
        for (auto v : order) {
            auto list = graph.neighbours(v);
            if (list.empty()) continue;
            auto weights = graph.neighbour_weights(v);
            touched.clear();
            for (std::size_t i = 0; i < list.size(); ++i) {
                const auto label = labels[list[i]];
                if (label_weight[label] == 0) touched.push_back(label);
                label_weight[label] += weights[i];
            }
            std::uint32_t best = touched.front();
            for (auto label : touched) {
                if (label_weight[label] > label_weight[best] ||
                    (label_weight[label] == label_weight[best] && label < best)) {
                    best = label;
                }
            }
            for (auto label : touched) label_weight[label] = 0;
            if (best != labels[v]) {
                labels[v] = best;
                changed = true;
            }
        }
        if (!changed) {
            result.converged = true;
            break;
        }
    }

    constexpr auto unassigned = UINT32_MAX;
    std::vector<std::uint32_t> renumber(n, unassigned);
    result.labels.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        auto& mapped = renumber[labels[v]];
        if (mapped == unassigned) mapped = result.cluster_count++;
        result.labels[v] = mapped;
    }
    return result;
}

}  // namespace

ClusterAssignment detect_communities(const CollaborationGraph& graph, std::uint64_t seed,
                                     std::uint32_t max_rounds, std::uint32_t restarts) {
    if (graph.vertex_count() == 0) {
        ClusterAssignment empty;
        empty.converged = true;
        return empty;
    }
    auto best = propagate(graph, seed, max_rounds);
    if (restarts <= 1 || graph.total_weight() == 0) return best;
    double best_q = modularity(graph, best);
    std::uint64_t state = seed;
    for (std::uint32_t run = 1; run < restarts; ++run) {
        auto candidate = propagate(graph, splitmix64(state), max_rounds);
        const double q = modularity(graph, candidate);
        if (q > best_q) {
            best_q = q;
            best = std::move(candidate);
        }
    }
    return best;
}

double modularity(const CollaborationGraph& graph, std::span<const std::uint32_t> labels) {
    if (labels.size() != graph.vertex_count())
        throw Error(ErrorCode::invalid_argument, "assignment does not cover the graph");
    const double m = static_cast<double>(graph.total_weight());
    if (graph.total_weight() == 0) throw Error(ErrorCode::empty_graph, "graph has no edges");

    const auto clusters = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<double> internal(clusters, 0.0);
    std::vector<double> degree(clusters, 0.0);
    for (const auto& e : graph.edges()) {
        if (labels[e.a] == labels[e.b]) internal[labels[e.a]] += e.weight;
        degree[labels[e.a]] += e.weight;
        degree[labels[e.b]] += e.weight;
    }
    double q = 0.0;
    for (std::size_t c = 0; c < clusters; ++c) {
        const double share = degree[c] / (2.0 * m);
        q += internal[c] / m - share * share;
    }
    return q;
}

double modularity(const CollaborationGraph& graph, const ClusterAssignment& assignment) {
    return modularity(graph, assignment.labels);
}

}  // namespace collabgraph
