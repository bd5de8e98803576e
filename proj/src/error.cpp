#include "error.hpp"

namespace crate2bib {

std::string_view error_kind_name(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::NotFound: return "NotFound";
        case ErrorKind::NoMatch: return "NoMatch";
        case ErrorKind::AllYanked: return "AllYanked";
        case ErrorKind::RateLimited: return "RateLimited";
        case ErrorKind::Network: return "Network";
        case ErrorKind::OfflineMiss: return "OfflineMiss";
        case ErrorKind::Malformed: return "Malformed";
        case ErrorKind::MalformedUrl: return "MalformedUrl";
        case ErrorKind::Unsupported: return "Unsupported";
        case ErrorKind::NotYaml: return "NotYaml";
        case ErrorKind::SchemaViolation: return "SchemaViolation";
        case ErrorKind::BadDate: return "BadDate";
        case ErrorKind::Unkeyable: return "Unkeyable";
        case ErrorKind::Syntax: return "Syntax";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace crate2bib
