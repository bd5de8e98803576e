#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crate2bib {

/// Minimal absolute-URL split, enough for http(s) requests and path
/// inspection. Scheme and host are lowercased.
struct Url {
    std::string scheme;
    std::string host;
    std::optional<int> port;
    std::string path;  // starts with '/' or is empty
    std::string query;
    std::string fragment;

    /// `scheme://host[:port]`
    std::string origin() const;
    /// path (or "/") plus `?query` when present
    std::string target() const;
    /// Non-empty path segments in order.
    std::vector<std::string> segments() const;
};

std::optional<Url> parse_url(std::string_view text);

bool is_absolute_http_url(std::string_view text);

}  // namespace crate2bib
