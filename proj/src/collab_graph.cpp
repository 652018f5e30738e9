#include "collabgraph/collab_graph.hpp"

#include <algorithm>
#include <unordered_set>

#include "collabgraph/error.hpp"

namespace collabgraph {

std::string_view to_string(KindFilter kind) noexcept {
    switch (kind) {
        case KindFilter::publication: return "publication";
        case KindFilter::credit: return "credit";
        case KindFilter::all: return "all";
    }
    return "all";
}

std::optional<KindFilter> parse_kind_filter(std::string_view text) noexcept {
    if (text == "publication") return KindFilter::publication;
    if (text == "credit") return KindFilter::credit;
    if (text == "all") return KindFilter::all;
    return std::nullopt;
}

bool matches(KindFilter filter, RecordKind kind) noexcept {
    switch (filter) {
        case KindFilter::publication: return kind == RecordKind::publication;
        case KindFilter::credit: return kind == RecordKind::credit;
        case KindFilter::all: return true;
    }
    return false;
}

CollaborationGraph CollaborationGraph::from_edges(
    std::vector<AuthorId> vertices,
    const std::vector<std::tuple<AuthorId, AuthorId, std::uint32_t>>& edges, KindFilter kind) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    auto lookup = [&](const AuthorId& id) {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), id);
        if (it == vertices.end() || *it != id)
            throw Error(ErrorCode::invalid_argument, "edge endpoint " + id + " is not a vertex");
        return static_cast<VertexIndex>(it - vertices.begin());
    };
    std::vector<WeightedEdge> indexed;
    indexed.reserve(edges.size());
    for (const auto& [a, b, weight] : edges) indexed.push_back({lookup(a), lookup(b), weight});
    return from_index_edges(std::move(vertices), std::move(indexed), kind);
}

CollaborationGraph CollaborationGraph::from_index_edges(std::vector<AuthorId> sorted_vertices,
                                                        std::vector<WeightedEdge> edges,
                                                        KindFilter kind) {
    if (sorted_vertices.size() > UINT32_MAX)
        throw Error(ErrorCode::invalid_argument, "too many vertices");
    for (std::size_t i = 1; i < sorted_vertices.size(); ++i) {
        if (!(sorted_vertices[i - 1] < sorted_vertices[i]))
            throw Error(ErrorCode::invalid_argument, "vertices must be strictly ascending");
    }
    const auto n = static_cast<VertexIndex>(sorted_vertices.size());
    for (auto& e : edges) {
        if (e.a >= n || e.b >= n) throw Error(ErrorCode::invalid_argument, "edge endpoint out of range");
        if (e.a == e.b)
            throw Error(ErrorCode::invalid_argument, "self-loop on " + sorted_vertices[e.a]);
        if (e.weight == 0) throw Error(ErrorCode::invalid_argument, "edge weight must be positive");
        if (e.a > e.b) std::swap(e.a, e.b);
    }
    std::sort(edges.begin(), edges.end(), [](const WeightedEdge& x, const WeightedEdge& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    std::vector<WeightedEdge> merged;
    merged.reserve(edges.size());
    for (const auto& e : edges) {
        if (!merged.empty() && merged.back().a == e.a && merged.back().b == e.b) {
            merged.back().weight += e.weight;
        } else {
            merged.push_back(e);
        }
    }

    CollaborationGraph graph;
    graph.vertices_ = std::move(sorted_vertices);
    graph.kind_ = kind;
    graph.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& e : merged) {
        ++graph.offsets_[e.a + 1];
        ++graph.offsets_[e.b + 1];
        graph.total_weight_ += e.weight;
    }
    for (std::size_t v = 0; v < n; ++v) graph.offsets_[v + 1] += graph.offsets_[v];
    graph.targets_.resize(merged.size() * 2);
    graph.weights_.resize(merged.size() * 2);
    // Filling in (a, b) order leaves every adjacency list ascending: lower
    // neighbours arrive first in increasing order, then higher ones.
    std::vector<std::size_t> cursor(graph.offsets_.begin(), graph.offsets_.end() - 1);
    for (const auto& e : merged) {
        graph.targets_[cursor[e.a]] = e.b;
        graph.weights_[cursor[e.a]++] = e.weight;
        graph.targets_[cursor[e.b]] = e.a;
        graph.weights_[cursor[e.b]++] = e.weight;
    }
    return graph;
}

std::optional<VertexIndex> CollaborationGraph::index_of(std::string_view id) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                               [](const AuthorId& v, std::string_view key) { return v < key; });
    if (it == vertices_.end() || *it != id) return std::nullopt;
    return static_cast<VertexIndex>(it - vertices_.begin());
}

VertexIndex CollaborationGraph::require(std::string_view id) const {
    auto index = index_of(id);
    if (!index) throw Error(ErrorCode::unknown_author, "unknown author " + std::string(id));
    return *index;
}

std::span<const VertexIndex> CollaborationGraph::neighbours(VertexIndex v) const {
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::span<const std::uint32_t> CollaborationGraph::neighbour_weights(VertexIndex v) const {
    return {weights_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::uint32_t CollaborationGraph::weight(VertexIndex a, VertexIndex b) const {
    if (a >= vertex_count() || b >= vertex_count()) return 0;
    auto list = neighbours(a);
    auto it = std::lower_bound(list.begin(), list.end(), b);
    if (it == list.end() || *it != b) return 0;
    return weights_[offsets_[a] + static_cast<std::size_t>(it - list.begin())];
}

std::uint32_t CollaborationGraph::weight(std::string_view a, std::string_view b) const {
    auto ia = index_of(a);
    auto ib = index_of(b);
    return ia && ib ? weight(*ia, *ib) : 0;
}

std::vector<WeightedEdge> CollaborationGraph::edges() const {
    std::vector<WeightedEdge> out;
    out.reserve(edge_count());
    for (VertexIndex a = 0; a < vertex_count(); ++a) {
        auto list = neighbours(a);
        auto weights = neighbour_weights(a);
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (list[i] > a) out.push_back({a, list[i], weights[i]});
        }
    }
    return out;
}

CollaborationGraph build_coauthor_graph(const Corpus& corpus, KindFilter kind) {
    std::vector<AuthorId> vertices;
    vertices.reserve(corpus.authors().size());
    for (const auto& [id, author] : corpus.authors()) vertices.push_back(id);

    auto index = [&](const AuthorId& id) {
        return static_cast<VertexIndex>(std::lower_bound(vertices.begin(), vertices.end(), id) -
                                        vertices.begin());
    };
    std::vector<WeightedEdge> edges;
    std::vector<VertexIndex> members;
    for (const auto& [id, record] : corpus.records()) {
        if (!matches(kind, record.kind)) continue;
        members.clear();
        for (const auto& author : record.author_ids) members.push_back(index(author));
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                edges.push_back({members[i], members[j], 1});
            }
        }
    }
    return CollaborationGraph::from_index_edges(std::move(vertices), std::move(edges), kind);
}

std::uint32_t CitationGraph::weight(std::string_view citing, std::string_view cited) const {
    auto it = edges_.find({std::string(citing), std::string(cited)});
    return it == edges_.end() ? 0 : it->second;
}

std::vector<CitationEdge> CitationGraph::edges() const {
    std::vector<CitationEdge> out;
    out.reserve(edges_.size());
    for (const auto& [pair, weight] : edges_) {
        out.push_back({pair.first, pair.second, weight, pair.first == pair.second});
    }
    return out;
}

std::vector<CitationEdge> CitationGraph::self_citations() const {
    auto all = edges();
    std::erase_if(all, [](const CitationEdge& e) { return !e.self_citation; });
    return all;
}

std::vector<std::pair<AuthorId, std::uint32_t>> CitationGraph::citers_of(std::string_view cited) const {
    std::vector<std::pair<AuthorId, std::uint32_t>> out;
    for (const auto& [pair, weight] : edges_) {
        if (pair.second == cited && pair.first != cited) out.emplace_back(pair.first, weight);
    }
    return out;
}

CitationGraph build_citation_graph(const Corpus& corpus) {
    std::vector<AuthorId> vertices;
    for (const auto& [id, author] : corpus.authors()) vertices.push_back(id);
    std::map<std::pair<AuthorId, AuthorId>, std::uint32_t> edges;
    for (const auto& [id, record] : corpus.records()) {
        for (const auto& cited_id : record.cites) {
            const auto* cited = corpus.find_record(cited_id);
            if (!cited) continue;
            for (const auto& from : record.author_ids) {
                for (const auto& to : cited->author_ids) ++edges[{from, to}];
            }
        }
    }
    return CitationGraph(std::move(vertices), std::move(edges));
}

bool GenealogyForest::contains(std::string_view id) const {
    return std::binary_search(nodes.begin(), nodes.end(), id,
                              [](const auto& x, const auto& y) { return std::string_view(x) < std::string_view(y); });
}

std::vector<AuthorId> GenealogyForest::roots() const {
    std::vector<AuthorId> out;
    for (const auto& id : nodes) {
        if (!advisor_of.contains(id)) out.push_back(id);
    }
    return out;
}

GenealogyForest build_genealogy(const Corpus& corpus) {
    auto cycles = find_advisor_cycles(corpus);
    if (!cycles.empty()) {
        std::string members;
        for (const auto& id : cycles.front()) members += (members.empty() ? "" : ", ") + id;
        throw Error(ErrorCode::advisor_cycle, "advisor cycle: {" + members + "}");
    }
    GenealogyForest forest;
    std::set<AuthorId> nodes;
    for (const auto& [id, author] : corpus.authors()) {
        if (!author.advisor_id) continue;
        forest.advisor_of[id] = *author.advisor_id;
        forest.students_of[*author.advisor_id].push_back(id);
        nodes.insert(id);
        nodes.insert(*author.advisor_id);
    }
    // Authors are visited in id order, so each student list is already sorted.
    forest.nodes.assign(nodes.begin(), nodes.end());
    for (const auto& id : forest.nodes) forest.institution[id] = corpus.authors().at(id).institution;
    return forest;
}

EgoSubgraph ego_subgraph(const CollaborationGraph& graph, std::string_view center, std::size_t k) {
    if (k == 0) throw Error(ErrorCode::invalid_argument, "k must be positive");
    const auto c = graph.require(center);
    auto list = graph.neighbours(c);
    auto weights = graph.neighbour_weights(c);

    std::vector<std::pair<std::uint32_t, VertexIndex>> ranked;
    ranked.reserve(list.size());
    for (std::size_t i = 0; i < list.size(); ++i) ranked.emplace_back(weights[i], list[i]);
    auto by_rank = [](const auto& x, const auto& y) {
        return x.first != y.first ? x.first > y.first : x.second < y.second;
    };
    const auto keep = std::min(k, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end(), by_rank);
    ranked.resize(keep);

    EgoSubgraph ego;
    ego.center = graph.id_of(c);
    ego.excluded = list.size() - keep;
    std::vector<VertexIndex> retained;
    for (const auto& [count, v] : ranked) {
        ego.neighbours.push_back({graph.id_of(v), count});
        retained.push_back(v);
    }
    std::sort(retained.begin(), retained.end());
    for (auto v : retained) {
        auto adjacent = graph.neighbours(v);
        auto adjacent_weights = graph.neighbour_weights(v);
        for (std::size_t i = 0; i < adjacent.size(); ++i) {
            auto u = adjacent[i];
            if (u > v && std::binary_search(retained.begin(), retained.end(), u)) {
                ego.edges.push_back({graph.id_of(v), graph.id_of(u), adjacent_weights[i]});
            }
        }
    }
    return ego;
}

}  // namespace collabgraph
