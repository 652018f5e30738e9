#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "collabgraph/collab_graph.hpp"
#include "collabgraph/corpus.hpp"

namespace collabgraph {

// Largest h such that h entries are >= h.
std::uint64_t h_index(std::span<const std::uint64_t> citation_counts);
// Largest g <= size such that the g largest entries sum to >= g^2.
std::uint64_t g_index(std::span<const std::uint64_t> citation_counts);
// Entries >= 10.
std::uint64_t i10_index(std::span<const std::uint64_t> citation_counts);

enum class CitationSource {
    in_corpus_cites,  // tallies of per-record `cites` links inside the corpus
    external_count,   // each record's citation_count (0 when absent)
};

std::string_view to_string(CitationSource source) noexcept;

struct BibliometricIndices {
    std::uint64_t h = 0;
    std::uint64_t g = 0;
    std::uint64_t i10 = 0;
    std::uint64_t record_count = 0;
    CitationSource source = CitationSource::in_corpus_cites;
    std::vector<std::uint64_t> citation_counts;  // per authored record, id order
};

/// Per-record citation counts come from in-corpus `cites` tallies when any
/// record in the corpus carries cites, otherwise from citation_count.
/// Throws Error(unknown_author).
BibliometricIndices author_indices(const Corpus& corpus, std::string_view author);

enum class SeriesMode { annual, cumulative };

std::string_view to_string(SeriesMode mode) noexcept;
std::optional<SeriesMode> parse_series_mode(std::string_view text) noexcept;

struct YearPoint {
    int year;
    std::uint64_t papers;
    std::uint64_t citations;

    friend bool operator==(const YearPoint&, const YearPoint&) = default;
};

struct YearlySeries {
    AuthorId author;
    SeriesMode mode = SeriesMode::cumulative;
    std::vector<YearPoint> points;  // contiguous, ascending years
    std::uint64_t undated_records = 0;
    std::uint64_t undated_citations = 0;
};

/// Papers by record year and citations by citing-record year, over the
/// contiguous range spanned by both. Undated records and citations are
/// counted in the `undated_*` fields only. Throws Error(unknown_author).
YearlySeries yearly_series(const Corpus& corpus, std::string_view author, SeriesMode mode);

/// Hop distances from a root author; unreachable authors are absent.
class DistanceMap {
public:
    DistanceMap() = default;
    DistanceMap(AuthorId root, std::map<AuthorId, std::uint32_t> distances)
        : root_(std::move(root)), distances_(std::move(distances)) {}

    const AuthorId& root() const noexcept { return root_; }
    const std::map<AuthorId, std::uint32_t>& distances() const noexcept { return distances_; }
    std::size_t size() const noexcept { return distances_.size(); }
    std::optional<std::uint32_t> find(std::string_view id) const;

    friend bool operator==(const DistanceMap&, const DistanceMap&) = default;

private:
    AuthorId root_;
    std::map<AuthorId, std::uint32_t> distances_;
};

inline constexpr std::uint32_t kUnreachable = UINT32_MAX;

/// BFS hop counts indexed by vertex; kUnreachable where disconnected.
std::vector<std::uint32_t> hop_distances(const CollaborationGraph& graph, VertexIndex root);

/// Throws Error(unknown_author).
DistanceMap collaborative_distance(const CollaborationGraph& graph, std::string_view root);

std::optional<std::uint32_t> combined_number(const DistanceMap& first, const DistanceMap& second,
                                             std::string_view person);

}  // namespace collabgraph
