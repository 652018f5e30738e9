#include "collabgraph/error.hpp"

namespace collabgraph {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::malformed_record: return "malformed_record";
        case ErrorCode::duplicate_id: return "duplicate_id";
        case ErrorCode::dangling_author: return "dangling_author";
        case ErrorCode::unknown_author: return "unknown_author";
        case ErrorCode::invalid_argument: return "invalid_argument";
        case ErrorCode::advisor_cycle: return "advisor_cycle";
        case ErrorCode::empty_graph: return "empty_graph";
        case ErrorCode::unsupported_format: return "unsupported_format";
        case ErrorCode::corrupt_snapshot: return "corrupt_snapshot";
        case ErrorCode::version_mismatch: return "version_mismatch";
        case ErrorCode::io_error: return "io_error";
    }
    return "unknown";
}

}  // namespace collabgraph
