#include "collabgraph/persistence.hpp"

#include <array>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>

#include <json.hpp>
#include <zlib.h>

#include "collabgraph/error.hpp"

namespace collabgraph {

namespace {

constexpr std::string_view kMagic = "CGSTATE\n";
constexpr std::string_view kMetaTag = "META";
constexpr std::string_view kCorpusTag = "CORP";

template <typename T>
void put(std::string& out, T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out += static_cast<char>((value >> (8 * i)) & 0xff);
}

std::uint32_t checksum(std::string_view bytes) {
    return static_cast<std::uint32_t>(
        crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size())));
}

[[noreturn]] void corrupt(const std::string& why) {
    throw Error(ErrorCode::corrupt_snapshot, "corrupt snapshot: " + why);
}

class Reader {
public:
    explicit Reader(std::string_view bytes) : bytes_(bytes) {}

    template <typename T>
    T take() {
        auto raw = take_bytes(sizeof(T));
        T value = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i)
            value |= static_cast<T>(static_cast<unsigned char>(raw[i])) << (8 * i);
        return value;
    }

    std::string_view take_bytes(std::size_t count) {
        if (count > bytes_.size() - offset_) corrupt("truncated");
        auto out = bytes_.substr(offset_, count);
        offset_ += count;
        return out;
    }

    std::size_t remaining() const { return bytes_.size() - offset_; }

private:
    std::string_view bytes_;
    std::size_t offset_ = 0;
};

}  // namespace

std::string encode_state(const PersistedState& state) {
    const auto corpus_lines = serialize_corpus(state.corpus);
    const nlohmann::ordered_json meta{{"version", state.version},
                                      {"authors", state.corpus.authors().size()},
                                      {"records", state.corpus.records().size()}};
    const auto meta_text = meta.dump();

    std::string out(kMagic);
    put<std::uint32_t>(out, kSnapshotSchemaVersion);
    put<std::uint32_t>(out, 2);
    for (const auto& [tag, payload] : {std::pair{kMetaTag, std::string_view(meta_text)},
                                       std::pair{kCorpusTag, std::string_view(corpus_lines)}}) {
        out += tag;
        put<std::uint64_t>(out, payload.size());
        out += payload;
    }
    put<std::uint32_t>(out, checksum(out));
    return out;
}

PersistedState decode_state(std::string_view bytes) {
    Reader header(bytes);
    if (header.take_bytes(kMagic.size()) != kMagic) corrupt("bad magic");
    const auto schema = header.take<std::uint32_t>();
    if (schema != kSnapshotSchemaVersion)
        throw Error(ErrorCode::version_mismatch, "snapshot schema " + std::to_string(schema) +
                                                     " is not supported (expected " +
                                                     std::to_string(kSnapshotSchemaVersion) + ")");
    if (bytes.size() < kMagic.size() + 12) corrupt("truncated");
    const auto body = bytes.substr(0, bytes.size() - 4);
    Reader trailer(bytes.substr(bytes.size() - 4));
    if (trailer.take<std::uint32_t>() != checksum(body)) corrupt("checksum mismatch");

    Reader reader(body);
    reader.take_bytes(kMagic.size() + 4);
    const auto count = reader.take<std::uint32_t>();
    std::map<std::string, std::string_view> sections;
    for (std::uint32_t i = 0; i < count; ++i) {
        const auto tag = std::string(reader.take_bytes(4));
        const auto length = reader.take<std::uint64_t>();
        if (length > reader.remaining()) corrupt("section " + tag + " overruns the file");
        sections[tag] = reader.take_bytes(static_cast<std::size_t>(length));
    }
    if (reader.remaining() != 0) corrupt("trailing bytes");
    if (!sections.contains(std::string(kMetaTag)) || !sections.contains(std::string(kCorpusTag)))
        corrupt("missing section");

    PersistedState state;
    try {
        const auto meta = nlohmann::json::parse(sections.at(std::string(kMetaTag)));
        state.version = meta.at("version").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        corrupt(std::string("metadata: ") + e.what());
    }
    try {
        state.corpus = parse_corpus(sections.at(std::string(kCorpusTag)));
    } catch (const Error& e) {
        corrupt(std::string("corpus: ") + e.what());
    }
    return state;
}

void save_state(const PersistedState& state, const std::filesystem::path& path) {
    const auto bytes = encode_state(state);
    auto temporary = path;
    temporary += ".tmp";
    {
        std::ofstream out(temporary, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::io_error, "cannot write " + temporary.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw Error(ErrorCode::io_error, "write failed for " + temporary.string());
    }
    std::error_code ec;
    std::filesystem::rename(temporary, path, ec);
    if (ec) throw Error(ErrorCode::io_error, "cannot replace " + path.string() + ": " + ec.message());
}

PersistedState load_state(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_error, "cannot read " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_state(bytes);
}

std::filesystem::path default_state_path() {
    if (const char* configured = std::getenv("COLLABGRAPH_STATE"); configured && *configured)
        return configured;
    return "collabgraph.state";
}

}  // namespace collabgraph
