#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace crate2bib {

enum class ErrorKind {
    InvalidInput,    // caller-supplied argument rejected before any I/O
    NotFound,        // registry 404
    NoMatch,         // no version satisfies the request
    AllYanked,       // matches exist, all yanked, request was not exact
    RateLimited,     // registry 429
    Network,         // transport failure or unexpected HTTP status
    OfflineMiss,     // offline mode and no fresh cache record
    Malformed,       // response body could not be interpreted
    MalformedUrl,
    Unsupported,     // repository host we do not probe
    NotYaml,
    SchemaViolation,
    BadDate,
    Unkeyable,
    Syntax,          // BibTeX parse failure
    Io,              // cache directory / file failures
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace crate2bib
