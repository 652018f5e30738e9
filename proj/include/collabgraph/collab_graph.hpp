#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <tuple>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "collabgraph/corpus.hpp"

namespace collabgraph {

enum class KindFilter { publication, credit, all };

std::string_view to_string(KindFilter kind) noexcept;
std::optional<KindFilter> parse_kind_filter(std::string_view text) noexcept;
bool matches(KindFilter filter, RecordKind kind) noexcept;

using VertexIndex = std::uint32_t;

// Undirected edge with a < b.
struct WeightedEdge {
    VertexIndex a;
    VertexIndex b;
    std::uint32_t weight;

    friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Weighted undirected co-authorship graph in CSR form.
///
/// Vertices are kept sorted by author id, so a vertex index order is the
/// same as author-id order; every tie-break on ids can be done on indices.
/// Adjacency lists are sorted ascending.
class CollaborationGraph {
public:
    CollaborationGraph() = default;

    /// `vertices` may be unsorted and contain repeats. Edges naming the same
    /// pair are summed. Throws Error(invalid_argument) on self-loops, zero
    /// weights or endpoints missing from `vertices`.
    static CollaborationGraph from_edges(
        std::vector<AuthorId> vertices,
        const std::vector<std::tuple<AuthorId, AuthorId, std::uint32_t>>& edges,
        KindFilter kind = KindFilter::all);

    /// Fast path: `sorted_vertices` must be strictly ascending; edge indices
    /// refer into it. Same validation and merging rules as from_edges.
    static CollaborationGraph from_index_edges(std::vector<AuthorId> sorted_vertices,
                                               std::vector<WeightedEdge> edges,
                                               KindFilter kind = KindFilter::all);

    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    std::size_t edge_count() const noexcept { return targets_.size() / 2; }
    KindFilter kind() const noexcept { return kind_; }

    const std::vector<AuthorId>& vertices() const noexcept { return vertices_; }
    const AuthorId& id_of(VertexIndex v) const { return vertices_.at(v); }
    std::optional<VertexIndex> index_of(std::string_view id) const;
    bool contains(std::string_view id) const { return index_of(id).has_value(); }

    /// Throws Error(unknown_author).
    VertexIndex require(std::string_view id) const;

    std::span<const VertexIndex> neighbours(VertexIndex v) const;
    std::span<const std::uint32_t> neighbour_weights(VertexIndex v) const;
    std::size_t degree(VertexIndex v) const { return offsets_[v + 1] - offsets_[v]; }

    /// Joint-record count; 0 when not adjacent.
    std::uint32_t weight(VertexIndex a, VertexIndex b) const;
    std::uint32_t weight(std::string_view a, std::string_view b) const;

    std::vector<WeightedEdge> edges() const;
    std::uint64_t total_weight() const noexcept { return total_weight_; }

    friend bool operator==(const CollaborationGraph&, const CollaborationGraph&) = default;

private:
    std::vector<AuthorId> vertices_;
    std::vector<std::size_t> offsets_{0};
    std::vector<VertexIndex> targets_;
    std::vector<std::uint32_t> weights_;
    std::uint64_t total_weight_ = 0;
    KindFilter kind_ = KindFilter::all;
};

/// One vertex per corpus author; weight(a, b) = number of matching records
/// listing both a and b.
CollaborationGraph build_coauthor_graph(const Corpus& corpus, KindFilter kind = KindFilter::all);

struct CitationEdge {
    AuthorId citing;
    AuthorId cited;
    std::uint32_t weight;
    bool self_citation;

    friend bool operator==(const CitationEdge&, const CitationEdge&) = default;
};

/// Directed author-level citation graph built from per-record `cites` only.
class CitationGraph {
public:
    CitationGraph() = default;
    CitationGraph(std::vector<AuthorId> vertices,
                  std::map<std::pair<AuthorId, AuthorId>, std::uint32_t> edges)
        : vertices_(std::move(vertices)), edges_(std::move(edges)) {}

    const std::vector<AuthorId>& vertices() const noexcept { return vertices_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::uint32_t weight(std::string_view citing, std::string_view cited) const;

    /// Sorted by (citing, cited).
    std::vector<CitationEdge> edges() const;
    std::vector<CitationEdge> self_citations() const;

    /// Authors citing `cited` (self excluded) with their weights.
    std::vector<std::pair<AuthorId, std::uint32_t>> citers_of(std::string_view cited) const;

private:
    std::vector<AuthorId> vertices_;
    std::map<std::pair<AuthorId, AuthorId>, std::uint32_t> edges_;
};

CitationGraph build_citation_graph(const Corpus& corpus);

/// Advisor -> student forest. Nodes are the authors that have an advisor or
/// at least one student.
struct GenealogyForest {
    std::vector<AuthorId> nodes;                               // ascending
    std::map<AuthorId, AuthorId> advisor_of;                   // student -> advisor
    std::map<AuthorId, std::vector<AuthorId>> students_of;     // ascending lists
    std::map<AuthorId, std::optional<std::string>> institution;

    bool contains(std::string_view id) const;
    std::vector<AuthorId> roots() const;
};

/// Throws Error(advisor_cycle) naming the ids of the first cycle found.
GenealogyForest build_genealogy(const Corpus& corpus);

struct EgoNeighbour {
    AuthorId id;
    std::uint32_t joint_count;

    friend bool operator==(const EgoNeighbour&, const EgoNeighbour&) = default;
};

struct EgoEdge {
    AuthorId a;  // a < b
    AuthorId b;
    std::uint32_t weight;

    friend bool operator==(const EgoEdge&, const EgoEdge&) = default;
};

struct EgoSubgraph {
    AuthorId center;
    std::vector<EgoNeighbour> neighbours;  // joint count desc, then id asc
    std::vector<EgoEdge> edges;            // among retained neighbours only
    std::size_t excluded = 0;              // co-authors cut by the K limit
};

inline constexpr std::size_t kDefaultEgoLimit = 30;

/// Throws Error(unknown_author) or Error(invalid_argument) for k == 0.
EgoSubgraph ego_subgraph(const CollaborationGraph& graph, std::string_view center,
                         std::size_t k = kDefaultEgoLimit);

}  // namespace collabgraph
