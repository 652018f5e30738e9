#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace collabgraph {

using AuthorId = std::string;
using RecordId = std::string;

enum class RecordKind { publication, credit };

std::string_view to_string(RecordKind kind) noexcept;
std::optional<RecordKind> parse_record_kind(std::string_view text) noexcept;

struct AuthorRecord {
    AuthorId id;
    std::string display_name;
    std::set<std::string> aliases;
    std::optional<std::string> institution;
    std::optional<AuthorId> advisor_id;

    friend bool operator==(const AuthorRecord&, const AuthorRecord&) = default;
};

struct CollaborationRecord {
    RecordId id;
    RecordKind kind = RecordKind::publication;
    std::string title;
    std::optional<int> year;
    std::vector<AuthorId> author_ids;
    std::optional<std::string> venue;
    std::set<RecordId> cites;
    // External count, used only when the corpus carries no per-record cites.
    std::optional<std::uint64_t> citation_count;

    friend bool operator==(const CollaborationRecord&, const CollaborationRecord&) = default;
};

/// Immutable set of authors and collaboration records.
///
/// Every constructor path checks the type invariants: unique non-empty ids,
/// authors referenced by records and advisor links exist, no self-advising,
/// non-empty duplicate-free author lists, no self-citation, and no citations
/// on film credits. Citations to records outside the corpus are allowed and
/// surface through validate().
class Corpus {
public:
    using AuthorMap = std::map<AuthorId, AuthorRecord>;
    using RecordMap = std::map<RecordId, CollaborationRecord>;

    Corpus() = default;

    /// Throws Error(duplicate_id | dangling_author | malformed_record).
    static Corpus create(std::vector<AuthorRecord> authors,
                         std::vector<CollaborationRecord> records);

    const AuthorMap& authors() const noexcept { return authors_; }
    const RecordMap& records() const noexcept { return records_; }

    const AuthorRecord* find_author(std::string_view id) const;
    const CollaborationRecord* find_record(std::string_view id) const;
    bool has_author(std::string_view id) const { return find_author(id) != nullptr; }

    friend bool operator==(const Corpus&, const Corpus&) = default;

private:
    friend struct CorpusAccess;

    Corpus(AuthorMap authors, RecordMap records)
        : authors_(std::move(authors)), records_(std::move(records)) {}

    AuthorMap authors_;
    RecordMap records_;
};

/// Reads the line-delimited JSON interchange format. Blank lines are skipped.
/// Throws MalformedRecord, or Error(duplicate_id | dangling_author).
Corpus parse_corpus(std::istream& input);
Corpus parse_corpus(std::string_view text);

/// Writes authors then records, in id order, one JSON object per line.
std::string serialize_corpus(const Corpus& corpus);

/// Folds `duplicates` into `canonical`. Throws Error(unknown_author) for any
/// absent id and Error(invalid_argument) when canonical is listed as a duplicate.
Corpus merge_authors(const Corpus& corpus, std::string_view canonical,
                     const std::vector<AuthorId>& duplicates);

/// Records with a known year <= cutoff; all authors kept, cites pruned to
/// the surviving records.
Corpus snapshot_by_year(const Corpus& corpus, int cutoff);

struct DanglingCitation {
    RecordId citing;
    RecordId cited;

    friend bool operator==(const DanglingCitation&, const DanglingCitation&) = default;
};

struct ValidationReport {
    std::vector<DanglingCitation> dangling_citations;
    std::vector<AuthorId> authors_without_records;
    // Each cycle lists its member ids in ascending order.
    std::vector<std::vector<AuthorId>> advisor_cycles;

    bool empty() const noexcept {
        return dangling_citations.empty() && authors_without_records.empty() &&
               advisor_cycles.empty();
    }
};

ValidationReport validate(const Corpus& corpus);

// Advisor cycles in ascending-id member order, shared by validate() and the
// genealogy builder.
std::vector<std::vector<AuthorId>> find_advisor_cycles(const Corpus& corpus);

}  // namespace collabgraph
