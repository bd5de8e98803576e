#include "cache.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "error.hpp"
#include "url.hpp"

namespace crate2bib {
namespace fs = std::filesystem;
namespace {

std::optional<std::string> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

void write_atomically(const fs::path& path, std::string_view content) {
    static std::atomic<unsigned> counter{0};
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw Error(ErrorKind::Io, "cannot write cache file " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorKind::Io, "cannot replace cache file " + path.string());
    }
}

bool cacheable(int status, std::string_view body) {
    return (status == 200 && !body.empty()) || (status == 404 && body.empty());
}

const char* env(const char* name) {
    const char* value = std::getenv(name);
    return value && *value ? value : nullptr;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorKind::Io, "SHA-256 computation failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out += kHex[digest[i] >> 4];
        out += kHex[digest[i] & 0xF];
    }
    return out;
}

Cache::Cache(fs::path directory, Clock clock) : directory_(std::move(directory)), clock_(std::move(clock)) {}

fs::path Cache::envelope_path(const std::string& url) const { return directory_ / (sha256_hex(url) + ".json"); }

fs::path Cache::body_path(const std::string& url) const { return directory_ / (sha256_hex(url) + ".body"); }

std::optional<CacheRecord> Cache::read(const std::string& url) const {
    auto envelope = read_file(envelope_path(url));
    if (!envelope) {
        return std::nullopt;
    }
    CacheRecord record;
    try {
        auto j = nlohmann::json::parse(*envelope);
        record.url = j.at("url").get<std::string>();
        record.status = j.at("status").get<int>();
        auto fetched = parse_timestamp(j.at("fetched_at").get<std::string>());
        if (!fetched) {
            return std::nullopt;
        }
        record.fetched_at = *fetched;
        record.ttl = std::chrono::seconds(j.at("ttl_seconds").get<std::int64_t>());
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;  // unreadable envelopes behave like misses
    }
    if (record.url != url) {
        return std::nullopt;
    }
    if (record.status == 200) {
        auto body = read_file(body_path(url));
        if (!body) {
            return std::nullopt;
        }
        record.body = std::move(*body);
    }
    if (!cacheable(record.status, record.body)) {
        return std::nullopt;
    }
    return record;
}

void Cache::write(const CacheRecord& record) {
    if (!is_absolute_http_url(record.url)) {
        throw Error(ErrorKind::InvalidInput, "cache URLs must be absolute: " + record.url);
    }
    if (!cacheable(record.status, record.body)) {
        throw Error(ErrorKind::InvalidInput, "status " + std::to_string(record.status) + " is not cacheable");
    }
    std::error_code ec;
    fs::create_directories(directory_, ec);
    if (ec) {
        throw Error(ErrorKind::Io, "cannot create cache directory " + directory_.string() + ": " + ec.message());
    }
    if (record.status == 200) {
        write_atomically(body_path(record.url), record.body);
    } else {
        fs::remove(body_path(record.url), ec);
    }
    nlohmann::ordered_json j;
    j["url"] = record.url;
    j["status"] = record.status;
    j["fetched_at"] = format_timestamp(record.fetched_at);
    j["ttl_seconds"] = record.ttl.count();
    write_atomically(envelope_path(record.url), j.dump(2) + "\n");
}

CacheLookup Cache::get_or_fetch(const std::string& url, const UrlFetcher& fetcher, std::chrono::seconds ttl,
                                CacheMode mode) {
    if (!is_absolute_http_url(url)) {
        throw Error(ErrorKind::InvalidInput, "cache URLs must be absolute: " + url);
    }
    if (auto record = read(url)) {
        auto effective_ttl = std::min(record->ttl, ttl);
        if (record->fetched_at + effective_ttl > clock_()) {
            return CacheLookup{record->status, std::move(record->body), true};
        }
    }
    if (mode == CacheMode::Offline) {
        throw Error(ErrorKind::OfflineMiss, "offline and no fresh cache record for " + url);
    }
    HttpResponse response = fetcher(url);
    if (response.status == 404) {
        // Error pages carry nothing worth keeping; a 404 record is just the status.
        response.body.clear();
    }
    if (cacheable(response.status, response.body)) {
        write(CacheRecord{url, response.status, response.body, clock_(), ttl});
    }
    return CacheLookup{response.status, std::move(response.body), false};
}

fs::path Cache::resolve_directory(const std::optional<fs::path>& explicit_dir) {
    if (explicit_dir && !explicit_dir->empty()) {
        return *explicit_dir;
    }
    if (const char* dir = env("CRATE2BIB_CACHE_DIR")) {
        return dir;
    }
#if defined(_WIN32)
    if (const char* local = env("LOCALAPPDATA")) {
        return fs::path(local) / "crate2bib" / "cache";
    }
#elif defined(__APPLE__)
    if (const char* home = env("HOME")) {
        return fs::path(home) / "Library" / "Caches" / "crate2bib";
    }
#else
    if (const char* xdg = env("XDG_CACHE_HOME")) {
        return fs::path(xdg) / "crate2bib";
    }
    if (const char* home = env("HOME")) {
        return fs::path(home) / ".cache" / "crate2bib";
    }
#endif
    return fs::temp_directory_path() / "crate2bib";
}

}  // namespace crate2bib
