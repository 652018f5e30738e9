#include "collabgraph/metrics.hpp"

#include <algorithm>
#include <functional>

#include "collabgraph/error.hpp"

namespace collabgraph {

namespace {

std::vector<std::uint64_t> sorted_descending(std::span<const std::uint64_t> counts) {
    std::vector<std::uint64_t> sorted(counts.begin(), counts.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    return sorted;
}

void require_author(const Corpus& corpus, std::string_view author) {
    if (!corpus.has_author(author))
        throw Error(ErrorCode::unknown_author, "unknown author " + std::string(author));
}

bool authored_by(const CollaborationRecord& record, std::string_view author) {
    return std::find(record.author_ids.begin(), record.author_ids.end(), author) !=
           record.author_ids.end();
}

}  // namespace

std::uint64_t h_index(std::span<const std::uint64_t> citation_counts) {
    auto sorted = sorted_descending(citation_counts);
    std::uint64_t h = 0;
    while (h < sorted.size() && sorted[h] >= h + 1) ++h;
    return h;
}

std::uint64_t g_index(std::span<const std::uint64_t> citation_counts) {
    auto sorted = sorted_descending(citation_counts);
    // The condition is not monotone in g, so every candidate is checked.
    std::uint64_t g = 0;
    unsigned __int128 total = 0;
    for (std::uint64_t i = 0; i < sorted.size(); ++i) {
        total += sorted[i];
        const unsigned __int128 candidate = i + 1;
        if (total >= candidate * candidate) g = i + 1;
    }
    return g;
}

std::uint64_t i10_index(std::span<const std::uint64_t> citation_counts) {
    return static_cast<std::uint64_t>(
        std::count_if(citation_counts.begin(), citation_counts.end(), [](auto c) { return c >= 10; }));
}

std::string_view to_string(CitationSource source) noexcept {
    return source == CitationSource::in_corpus_cites ? "in_corpus_cites" : "external_count";
}

BibliometricIndices author_indices(const Corpus& corpus, std::string_view author) {
    require_author(corpus, author);
    const bool has_cites = std::any_of(corpus.records().begin(), corpus.records().end(),
                                       [](const auto& entry) { return !entry.second.cites.empty(); });
    std::map<RecordId, std::uint64_t> tallies;
    if (has_cites) {
        for (const auto& [id, record] : corpus.records()) {
            for (const auto& cited : record.cites) ++tallies[cited];
        }
    }

    BibliometricIndices result;
    result.source = has_cites ? CitationSource::in_corpus_cites : CitationSource::external_count;
    for (const auto& [id, record] : corpus.records()) {
        if (!authored_by(record, author)) continue;
        std::uint64_t count = 0;
        if (has_cites) {
            if (auto it = tallies.find(id); it != tallies.end()) count = it->second;
        } else {
            count = record.citation_count.value_or(0);
        }
        result.citation_counts.push_back(count);
    }
    result.record_count = result.citation_counts.size();
    result.h = h_index(result.citation_counts);
    result.g = g_index(result.citation_counts);
    result.i10 = i10_index(result.citation_counts);
    return result;
}

std::string_view to_string(SeriesMode mode) noexcept {
    return mode == SeriesMode::annual ? "annual" : "cumulative";
}

std::optional<SeriesMode> parse_series_mode(std::string_view text) noexcept {
    if (text == "annual") return SeriesMode::annual;
    if (text == "cumulative") return SeriesMode::cumulative;
    return std::nullopt;
}

YearlySeries yearly_series(const Corpus& corpus, std::string_view author, SeriesMode mode) {
    require_author(corpus, author);
    YearlySeries series;
    series.author = std::string(author);
    series.mode = mode;

    std::map<int, std::uint64_t> papers;
    std::map<int, std::uint64_t> citations;
    for (const auto& [id, record] : corpus.records()) {
        if (!authored_by(record, author)) continue;
        if (record.year) {
            ++papers[*record.year];
        } else {
            ++series.undated_records;
        }
    }
    for (const auto& [id, citing] : corpus.records()) {
        for (const auto& cited_id : citing.cites) {
            const auto* cited = corpus.find_record(cited_id);
            if (!cited || !authored_by(*cited, author)) continue;
            if (citing.year) {
                ++citations[*citing.year];
            } else {
                ++series.undated_citations;
            }
        }
    }
    if (papers.empty() && citations.empty()) return series;

    int first = INT32_MAX;
    int last = INT32_MIN;
    for (const auto* bucket : {&papers, &citations}) {
        if (bucket->empty()) continue;
        first = std::min(first, bucket->begin()->first);
        last = std::max(last, bucket->rbegin()->first);
    }
    std::uint64_t paper_total = 0;
    std::uint64_t citation_total = 0;
    for (long long year = first; year <= last; ++year) {
        const int y = static_cast<int>(year);
        auto p = papers.contains(y) ? papers.at(y) : 0;
        auto c = citations.contains(y) ? citations.at(y) : 0;
        if (mode == SeriesMode::cumulative) {
            paper_total += p;
            citation_total += c;
            series.points.push_back({y, paper_total, citation_total});
        } else {
            series.points.push_back({y, p, c});
        }
    }
    return series;
}

std::optional<std::uint32_t> DistanceMap::find(std::string_view id) const {
    auto it = distances_.find(std::string(id));
    if (it == distances_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::uint32_t> hop_distances(const CollaborationGraph& graph, VertexIndex root) {
    std::vector<std::uint32_t> distance(graph.vertex_count(), kUnreachable);
    if (root >= graph.vertex_count()) return distance;
    std::vector<VertexIndex> frontier{root};
    std::vector<VertexIndex> next;
    distance[root] = 0;
    for (std::uint32_t level = 1; !frontier.empty(); ++level) {
        next.clear();
        for (auto v : frontier) {
            for (auto u : graph.neighbours(v)) {
                if (distance[u] == kUnreachable) {
                    distance[u] = level;
                    next.push_back(u);
                }
            }
        }
        frontier.swap(next);
    }
    return distance;
}

DistanceMap collaborative_distance(const CollaborationGraph& graph, std::string_view root) {
    const auto r = graph.require(root);
    auto distance = hop_distances(graph, r);
    std::map<AuthorId, std::uint32_t> reached;
    // Vertex order is id order, so hinted insertion at the end is linear.
    for (VertexIndex v = 0; v < distance.size(); ++v) {
        if (distance[v] != kUnreachable) reached.emplace_hint(reached.end(), graph.id_of(v), distance[v]);
    }
    return DistanceMap(graph.id_of(r), std::move(reached));
}

std::optional<std::uint32_t> combined_number(const DistanceMap& first, const DistanceMap& second,
                                             std::string_view person) {
    auto a = first.find(person);
    auto b = second.find(person);
    if (!a || !b) return std::nullopt;
    return *a + *b;
}

}  // namespace collabgraph
