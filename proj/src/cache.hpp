#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "http.hpp"
#include "timeutil.hpp"

namespace crate2bib {

enum class CacheMode { Online, Offline };

inline constexpr std::chrono::seconds kDefaultTtl{24 * 60 * 60};

/// Only 200 and 404 outcomes are cacheable; the body is empty iff 404.
struct CacheRecord {
    std::string url;
    int status = 200;
    std::string body;
    Timestamp fetched_at{};
    std::chrono::seconds ttl{kDefaultTtl};

    friend bool operator==(const CacheRecord&, const CacheRecord&) = default;
};

struct CacheLookup {
    int status = 0;
    std::string body;
    bool from_cache = false;
};

using UrlFetcher = std::function<HttpResponse(const std::string& url)>;

std::string sha256_hex(std::string_view data);

/// On-disk HTTP GET cache. Each record is `<sha256(url)>.json` (envelope with
/// url, status, fetched_at, ttl_seconds) beside `<sha256(url)>.body`.
/// Files are replaced atomically via rename; last writer wins.
class Cache {
public:
    using Clock = std::function<Timestamp()>;

    explicit Cache(std::filesystem::path directory, Clock clock = now_seconds);

    const std::filesystem::path& directory() const noexcept { return directory_; }

    std::optional<CacheRecord> read(const std::string& url) const;
    /// Throws Error{InvalidInput} for non-cacheable records, Error{Io} on
    /// filesystem failure.
    void write(const CacheRecord& record);

    /// A record is fresh while fetched_at + min(record ttl, ttl) > now.
    /// Offline mode never calls `fetcher` and throws Error{OfflineMiss}
    /// without a fresh record. Fetcher exceptions propagate uncached.
    CacheLookup get_or_fetch(const std::string& url, const UrlFetcher& fetcher, std::chrono::seconds ttl,
                             CacheMode mode);

    std::filesystem::path envelope_path(const std::string& url) const;
    std::filesystem::path body_path(const std::string& url) const;

    /// Explicit directory, else $CRATE2BIB_CACHE_DIR, else the platform
    /// cache home plus `crate2bib`.
    static std::filesystem::path resolve_directory(const std::optional<std::filesystem::path>& explicit_dir);

private:
    std::filesystem::path directory_;
    Clock clock_;
};

}  // namespace crate2bib
