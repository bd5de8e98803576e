#pragma once

// Fixture files, temporary cache directories and a ready-made FetchContext
// wired to a StubServer.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cache.hpp"
#include "http.hpp"
#include "registry_client.hpp"
#include "stub_server.hpp"

namespace crate2bib::testing {

inline std::filesystem::path fixture_path(const std::string& relative) {
    return std::filesystem::path(CRATE2BIB_FIXTURE_DIR) / relative;
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("missing fixture " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string read_fixture(const std::string& relative) { return read_text(fixture_path(relative)); }

/// Serves /api/v1/crates/<name> and /api/v1/crates/<name>/versions from
/// fixtures/registry/<name>.json and <name>.versions.json.
inline void serve_registry_fixture(StubServer& stub, const std::string& name) {
    stub.route("/api/v1/crates/" + name, 200, read_fixture("registry/" + name + ".json"));
    stub.route("/api/v1/crates/" + name + "/versions", 200, read_fixture("registry/" + name + ".versions.json"));
}

/// Fresh directory removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("crate2bib-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

/// Config whose registry and raw-file hosts all point at `stub`.
inline ClientConfig stub_config(const StubServer& stub, std::chrono::milliseconds interval = std::chrono::milliseconds{0}) {
    ClientConfig config;
    config.base_url = stub.base_url();
    config.github_raw_base = stub.base_url() + "/gh";
    config.codeberg_base = stub.base_url() + "/cb";
    config.user_agent = "crate2bib-tests (contact: tests@example.invalid)";
    config.min_request_interval = interval;
    config.timeout = std::chrono::milliseconds{5000};
    return config;
}

/// Owns everything a FetchContext refers to.
struct StubSession {
    explicit StubSession(const StubServer& stub, CacheMode mode = CacheMode::Online,
                         std::chrono::milliseconds interval = std::chrono::milliseconds{0})
        : http(stub_config(stub, interval), nullptr), cache(dir.path()), ctx{http, cache, mode, kDefaultTtl} {}

    TempDir dir;
    HttpFetcher http;
    Cache cache;
    FetchContext ctx;
};

}  // namespace crate2bib::testing
