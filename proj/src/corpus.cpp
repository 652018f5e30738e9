#include "collabgraph/corpus.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "collabgraph/error.hpp"
#include "corpus_access.hpp"

namespace collabgraph {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

void check_record_shape(const CollaborationRecord& record, std::size_t line) {
    if (record.id.empty()) throw MalformedRecord(line, "record id is empty");
    if (record.author_ids.empty())
        throw MalformedRecord(line, "record " + record.id + " has no authors");
    std::unordered_set<std::string_view> seen;
    for (const auto& author : record.author_ids) {
        if (author.empty()) throw MalformedRecord(line, "record " + record.id + " lists an empty author id");
        if (!seen.insert(author).second)
            throw MalformedRecord(line, "record " + record.id + " lists author " + author + " twice");
    }
    if (record.cites.contains(record.id))
        throw MalformedRecord(line, "record " + record.id + " cites itself");
    if (record.kind == RecordKind::credit && !record.cites.empty())
        throw MalformedRecord(line, "credit " + record.id + " carries citations");
}

void check_author_shape(const AuthorRecord& author, std::size_t line) {
    if (author.id.empty()) throw MalformedRecord(line, "author id is empty");
    if (author.advisor_id && *author.advisor_id == author.id)
        throw MalformedRecord(line, "author " + author.id + " is their own advisor");
}

struct Assembly {
    Corpus::AuthorMap authors;
    Corpus::RecordMap records;
    std::map<std::string, std::size_t> author_lines;
    std::map<std::string, std::size_t> record_lines;

    void add(AuthorRecord author, std::size_t line) {
        check_author_shape(author, line);
        auto id = author.id;
        if (!authors.emplace(id, std::move(author)).second)
            throw Error(ErrorCode::duplicate_id, "line " + std::to_string(line) + ": duplicate author id " + id);
        author_lines[id] = line;
    }

    void add(CollaborationRecord record, std::size_t line) {
        check_record_shape(record, line);
        auto id = record.id;
        if (!records.emplace(id, std::move(record)).second)
            throw Error(ErrorCode::duplicate_id, "line " + std::to_string(line) + ": duplicate record id " + id);
        record_lines[id] = line;
    }

    // Reference checks run after every line is in, so input order is irrelevant.
    void check_references() const {
        for (const auto& [id, author] : authors) {
            if (author.advisor_id && !authors.contains(*author.advisor_id))
                throw Error(ErrorCode::dangling_author,
                            "line " + std::to_string(author_lines.at(id)) + ": author " + id +
                                " names unknown advisor " + *author.advisor_id);
        }
        for (const auto& [id, record] : records) {
            for (const auto& author : record.author_ids) {
                if (!authors.contains(author))
                    throw Error(ErrorCode::dangling_author,
                                "line " + std::to_string(record_lines.at(id)) + ": record " + id +
                                    " names unknown author " + author);
            }
        }
    }
};

std::string require_string(const json& object, const char* key, std::size_t line) {
    auto it = object.find(key);
    if (it == object.end() || !it->is_string())
        throw MalformedRecord(line, std::string("missing or non-string \"") + key + "\"");
    return it->get<std::string>();
}

std::optional<std::string> optional_string(const json& object, const char* key, std::size_t line) {
    auto it = object.find(key);
    if (it == object.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw MalformedRecord(line, std::string("\"") + key + "\" must be a string");
    return it->get<std::string>();
}

std::vector<std::string> string_list(const json& object, const char* key, std::size_t line) {
    std::vector<std::string> out;
    auto it = object.find(key);
    if (it == object.end() || it->is_null()) return out;
    if (!it->is_array()) throw MalformedRecord(line, std::string("\"") + key + "\" must be an array");
    for (const auto& item : *it) {
        if (!item.is_string())
            throw MalformedRecord(line, std::string("\"") + key + "\" must hold strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

AuthorRecord decode_author(const json& object, std::size_t line) {
    AuthorRecord author;
    author.id = require_string(object, "id", line);
    author.display_name = optional_string(object, "name", line).value_or("");
    for (auto& alias : string_list(object, "aliases", line)) author.aliases.insert(std::move(alias));
    author.institution = optional_string(object, "institution", line);
    author.advisor_id = optional_string(object, "advisor", line);
    return author;
}

CollaborationRecord decode_record(const json& object, std::size_t line) {
    CollaborationRecord record;
    record.id = require_string(object, "id", line);
    if (auto kind = optional_string(object, "kind", line)) {
        auto parsed = parse_record_kind(*kind);
        if (!parsed) throw MalformedRecord(line, "unknown record kind \"" + *kind + "\"");
        record.kind = *parsed;
    }
    record.title = optional_string(object, "title", line).value_or("");
    if (auto it = object.find("year"); it != object.end() && !it->is_null()) {
        if (!it->is_number_integer()) throw MalformedRecord(line, "\"year\" must be an integer or null");
        record.year = it->get<int>();
    }
    auto authors = object.find("authors");
    if (authors == object.end() || !authors->is_array())
        throw MalformedRecord(line, "record needs an \"authors\" array");
    record.author_ids = string_list(object, "authors", line);
    record.venue = optional_string(object, "venue", line);
    for (auto& cited : string_list(object, "cites", line)) record.cites.insert(std::move(cited));
    if (auto it = object.find("citation_count"); it != object.end() && !it->is_null()) {
        if (!it->is_number_unsigned())
            throw MalformedRecord(line, "\"citation_count\" must be a non-negative integer");
        record.citation_count = it->get<std::uint64_t>();
    }
    return record;
}

bool is_blank(std::string_view line) {
    return std::all_of(line.begin(), line.end(),
                       [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

ordered_json encode(const AuthorRecord& author) {
    ordered_json out;
    out["type"] = "author";
    out["id"] = author.id;
    out["name"] = author.display_name;
    out["aliases"] = author.aliases;
    if (author.institution) out["institution"] = *author.institution;
    if (author.advisor_id) out["advisor"] = *author.advisor_id;
    return out;
}

ordered_json encode(const CollaborationRecord& record) {
    ordered_json out;
    out["type"] = "record";
    out["id"] = record.id;
    out["kind"] = to_string(record.kind);
    out["title"] = record.title;
    out["year"] = record.year ? ordered_json(*record.year) : ordered_json(nullptr);
    out["authors"] = record.author_ids;
    if (record.venue) out["venue"] = *record.venue;
    out["cites"] = record.cites;
    if (record.citation_count) out["citation_count"] = *record.citation_count;
    return out;
}

}  // namespace

std::string_view to_string(RecordKind kind) noexcept {
    return kind == RecordKind::publication ? "publication" : "credit";
}

std::optional<RecordKind> parse_record_kind(std::string_view text) noexcept {
    if (text == "publication") return RecordKind::publication;
    if (text == "credit") return RecordKind::credit;
    return std::nullopt;
}

Corpus Corpus::create(std::vector<AuthorRecord> authors, std::vector<CollaborationRecord> records) {
    Assembly assembly;
    for (auto& author : authors) assembly.add(std::move(author), 0);
    for (auto& record : records) assembly.add(std::move(record), 0);
    assembly.check_references();
    return Corpus(std::move(assembly.authors), std::move(assembly.records));
}

const AuthorRecord* Corpus::find_author(std::string_view id) const {
    auto it = authors_.find(std::string(id));
    return it == authors_.end() ? nullptr : &it->second;
}

const CollaborationRecord* Corpus::find_record(std::string_view id) const {
    auto it = records_.find(std::string(id));
    return it == records_.end() ? nullptr : &it->second;
}

Corpus parse_corpus(std::istream& input) {
    Assembly assembly;
    std::string text;
    std::size_t line = 0;
    while (std::getline(input, text)) {
        ++line;
        if (is_blank(text)) continue;
        json object;
        try {
            object = json::parse(text);
        } catch (const json::parse_error& e) {
            throw MalformedRecord(line, std::string("invalid JSON: ") + e.what());
        }
        if (!object.is_object()) throw MalformedRecord(line, "expected a JSON object");
        auto type = object.find("type");
        if (type == object.end() || !type->is_string()) throw MalformedRecord(line, "missing \"type\"");
        const auto& kind = type->get_ref<const std::string&>();
        try {
            if (kind == "author") {
                assembly.add(decode_author(object, line), line);
            } else if (kind == "record") {
                assembly.add(decode_record(object, line), line);
            } else {
                throw MalformedRecord(line, "unknown type \"" + kind + "\"");
            }
        } catch (const json::exception& e) {
            throw MalformedRecord(line, e.what());
        }
    }
    assembly.check_references();
    return CorpusAccess::make(std::move(assembly.authors), std::move(assembly.records));
}

Corpus parse_corpus(std::string_view text) {
    std::istringstream stream{std::string(text)};
    return parse_corpus(stream);
}

std::string serialize_corpus(const Corpus& corpus) {
    std::string out;
    for (const auto& [id, author] : corpus.authors()) {
        out += encode(author).dump();
        out += '\n';
    }
    for (const auto& [id, record] : corpus.records()) {
        out += encode(record).dump();
        out += '\n';
    }
    return out;
}

Corpus merge_authors(const Corpus& corpus, std::string_view canonical_id,
                     const std::vector<AuthorId>& duplicates) {
    if (!corpus.has_author(canonical_id))
        throw Error(ErrorCode::unknown_author, "unknown author " + std::string(canonical_id));
    std::set<AuthorId> folded;
    for (const auto& id : duplicates) {
        if (!corpus.has_author(id)) throw Error(ErrorCode::unknown_author, "unknown author " + id);
        if (id == canonical_id)
            throw Error(ErrorCode::invalid_argument, "canonical author " + id + " listed as a duplicate");
        folded.insert(id);
    }
    if (folded.empty()) return corpus;

    const AuthorId canonical(canonical_id);
    auto resolve = [&](const AuthorId& id) -> const AuthorId& {
        return folded.contains(id) ? canonical : id;
    };

    Corpus::AuthorMap authors;
    for (const auto& [id, author] : corpus.authors()) {
        if (!folded.contains(id)) authors.emplace(id, author);
    }
    auto& target = authors.at(canonical);
    for (const auto& id : folded) {
        const auto& duplicate = corpus.authors().at(id);
        target.aliases.insert(duplicate.aliases.begin(), duplicate.aliases.end());
        if (!duplicate.display_name.empty()) target.aliases.insert(duplicate.display_name);
        if (!target.institution) target.institution = duplicate.institution;
        if (!target.advisor_id) target.advisor_id = duplicate.advisor_id;
    }
    target.aliases.erase(target.display_name);
    for (auto& [id, author] : authors) {
        if (!author.advisor_id) continue;
        author.advisor_id = resolve(*author.advisor_id);
        // Folding an advisor into their own student leaves nothing to link.
        if (*author.advisor_id == id) author.advisor_id.reset();
    }

    Corpus::RecordMap records;
    for (const auto& [id, record] : corpus.records()) {
        auto copy = record;
        copy.author_ids.clear();
        std::set<std::string_view> seen;
        for (const auto& author : record.author_ids) {
            const auto& mapped = resolve(author);
            if (seen.insert(mapped).second) copy.author_ids.push_back(mapped);
        }
        records.emplace(id, std::move(copy));
    }
    return CorpusAccess::make(std::move(authors), std::move(records));
}

Corpus snapshot_by_year(const Corpus& corpus, int cutoff) {
    Corpus::RecordMap records;
    for (const auto& [id, record] : corpus.records()) {
        if (record.year && *record.year <= cutoff) records.emplace(id, record);
    }
    for (auto& [id, record] : records) {
        std::erase_if(record.cites, [&](const RecordId& cited) { return !records.contains(cited); });
    }
    return CorpusAccess::make(corpus.authors(), std::move(records));
}

std::vector<std::vector<AuthorId>> find_advisor_cycles(const Corpus& corpus) {
    // Each author has at most one advisor, so following links from any start
    // either terminates or enters exactly one cycle.
    enum class Mark : unsigned char { unseen, on_walk, done };
    std::map<std::string_view, Mark> marks;
    std::vector<std::vector<AuthorId>> cycles;
    for (const auto& [start, unused] : corpus.authors()) {
        if (marks[start] != Mark::unseen) continue;
        std::vector<std::string_view> walk;
        std::optional<std::string_view> current = start;
        while (current && marks[*current] == Mark::unseen) {
            marks[*current] = Mark::on_walk;
            walk.push_back(*current);
            const auto& advisor = corpus.authors().at(std::string(*current)).advisor_id;
            current = advisor ? std::optional<std::string_view>(*advisor) : std::nullopt;
        }
        if (current && marks[*current] == Mark::on_walk) {
            auto begin = std::find(walk.begin(), walk.end(), *current);
            std::vector<AuthorId> cycle(begin, walk.end());
            std::sort(cycle.begin(), cycle.end());
            cycles.push_back(std::move(cycle));
        }
        for (auto id : walk) marks[id] = Mark::done;
    }
    std::sort(cycles.begin(), cycles.end());
    return cycles;
}

ValidationReport validate(const Corpus& corpus) {
    ValidationReport report;
    std::set<std::string_view> active;
    for (const auto& [id, record] : corpus.records()) {
        for (const auto& author : record.author_ids) active.insert(author);
        for (const auto& cited : record.cites) {
            if (!corpus.records().contains(cited)) report.dangling_citations.push_back({id, cited});
        }
    }
    for (const auto& [id, author] : corpus.authors()) {
        if (!active.contains(id)) report.authors_without_records.push_back(id);
    }
    report.advisor_cycles = find_advisor_cycles(corpus);
    return report;
}

}  // namespace collabgraph
