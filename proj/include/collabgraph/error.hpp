#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace collabgraph {

enum class ErrorCode {
    malformed_record,
    duplicate_id,
    dangling_author,
    unknown_author,
    invalid_argument,
    advisor_cycle,
    empty_graph,
    unsupported_format,
    corrupt_snapshot,
    version_mismatch,
    io_error,
};

// Stable machine-readable name, used in HTTP error bodies and CLI output.
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Raised by the corpus reader; carries the 1-based input line (0 when the
// failure is not tied to a single line).
class MalformedRecord : public Error {
public:
    MalformedRecord(std::size_t line, const std::string& message)
        : Error(ErrorCode::malformed_record,
                "line " + std::to_string(line) + ": " + message),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace collabgraph
