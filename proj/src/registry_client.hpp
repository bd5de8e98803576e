#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cache.hpp"
#include "http.hpp"
#include "semver.hpp"
#include "timeutil.hpp"

namespace crate2bib {

/// Everything a network-backed operation needs: the throttled fetcher and
/// the cache it consults first.
struct FetchContext {
    HttpFetcher& http;
    Cache& cache;
    CacheMode mode = CacheMode::Online;
    std::chrono::seconds ttl = kDefaultTtl;

    /// GET through the cache.
    CacheLookup get(const std::string& url);
};

struct Publisher {
    std::string display_name;
    std::optional<std::string> email;

    friend bool operator==(const Publisher&, const Publisher&) = default;
};

struct VersionInfo {
    std::string semver;
    bool yanked = false;
    std::optional<std::string> license;
    Timestamp published_at{};
    std::optional<Publisher> published_by;

    friend bool operator==(const VersionInfo&, const VersionInfo&) = default;
};

struct PackageMeta {
    std::string name;
    std::optional<std::string> description;
    std::optional<std::string> repository_url;
    std::optional<std::string> homepage_url;
    std::vector<VersionInfo> versions;  // newest (highest semver) first
};

/// Lowercases and validates a package name (`[a-z0-9_-]+`, at most 64
/// characters). Throws Error{InvalidInput}.
std::string normalize_package_name(std::string_view name);

std::string crate_api_url(std::string_view base_url, std::string_view name);
std::string crate_versions_api_url(std::string_view base_url, std::string_view name);

/// Builds PackageMeta from the crate summary body and the concatenated
/// version records. Throws Error{Malformed}.
PackageMeta parse_package_meta(std::string_view summary_json, const std::vector<std::string>& version_pages,
                               Timestamp fetched_at);

/// Summary + version list, each consulted through the cache first.
/// Throws Error with kind InvalidInput (before any request), NotFound,
/// RateLimited, Network, OfflineMiss or Malformed.
PackageMeta fetch_package_meta(std::string_view name, FetchContext& ctx);

/// `latest`/empty, an exact semver, or a `MAJOR` / `MAJOR.MINOR` prefix.
struct VersionRequest {
    enum class Kind { Latest, Exact, Partial };

    Kind kind = Kind::Latest;
    SemVer exact;                       // Kind::Exact
    std::uint64_t major = 0;            // Kind::Partial
    std::optional<std::uint64_t> minor; // Kind::Partial

    /// Throws Error{InvalidInput}.
    static VersionRequest parse(std::string_view text);
};

struct Resolution {
    VersionInfo version;
    std::vector<std::string> warnings;  // e.g. an exact request for a yanked release
};

/// Highest non-yanked stable match for latest/partial requests; exact
/// requests match pre-releases and yanked versions (with a warning).
/// Throws Error{NoMatch} or Error{AllYanked}.
Resolution resolve_version(const VersionRequest& request, std::span<const VersionInfo> available);
Resolution resolve_version(std::string_view request, std::span<const VersionInfo> available);

}  // namespace crate2bib
