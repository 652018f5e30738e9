#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "collabgraph/corpus.hpp"

namespace collabgraph {

// Snapshot layout, all integers little-endian:
//   "CGSTATE\n" | u32 schema | u32 section count
//   { char[4] tag | u64 length | payload }*
//   u32 crc32 of every preceding byte
// Sections: META (JSON object with the corpus version) and CORP (corpus
// interchange lines).
inline constexpr std::uint32_t kSnapshotSchemaVersion = 1;

struct PersistedState {
    Corpus corpus;
    std::uint64_t version = 0;

    friend bool operator==(const PersistedState&, const PersistedState&) = default;
};

std::string encode_state(const PersistedState& state);

/// Throws Error(corrupt_snapshot) on truncation, bad magic, checksum or
/// payload failures and Error(version_mismatch) on an unsupported schema.
PersistedState decode_state(std::string_view bytes);

void save_state(const PersistedState& state, const std::filesystem::path& path);
PersistedState load_state(const std::filesystem::path& path);

// $COLLABGRAPH_STATE, else "collabgraph.state" in the working directory.
std::filesystem::path default_state_path();

}  // namespace collabgraph
