#include <doctest.h>

#include <cstdlib>
#include <json.hpp>

#include "cache.hpp"
#include "error.hpp"
#include "fixtures.hpp"

using namespace crate2bib;
using namespace crate2bib::testing;
using namespace std::chrono_literals;

namespace {

struct CountingFetcher {
    int calls = 0;
    int status = 200;
    std::string body = "fresh";
    bool fail = false;

    UrlFetcher fn() {
        return [this](const std::string&) {
            ++calls;
            if (fail) {
                throw Error(ErrorKind::Network, "stub transport failure");
            }
            return HttpResponse{status, body};
        };
    }
};

const std::string kUrl = "https://crates.io/api/v1/crates/serde";
const Timestamp kNow = Timestamp{std::chrono::seconds{1'750'000'000}};

}  // namespace

TEST_CASE("sha256_hex matches known digests") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("fresh hit in offline mode returns the cached body") {
    TempDir dir;
    Cache cache(dir.path(), [] { return kNow; });
    cache.write(CacheRecord{kUrl, 200, "cached", kNow - 10s, 3600s});
    CountingFetcher f;
    auto r = cache.get_or_fetch(kUrl, f.fn(), 3600s, CacheMode::Offline);
    CHECK(r.from_cache);
    CHECK(r.status == 200);
    CHECK(r.body == "cached");
    CHECK(f.calls == 0);
}

TEST_CASE("offline miss never calls the fetcher") {
    TempDir dir;
    Cache cache(dir.path(), [] { return kNow; });
    CountingFetcher f;
    CHECK_THROWS_AS(cache.get_or_fetch(kUrl, f.fn(), 3600s, CacheMode::Offline), Error);
    try {
        cache.get_or_fetch(kUrl, f.fn(), 3600s, CacheMode::Offline);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OfflineMiss);
    }
    CHECK(f.calls == 0);

    cache.write(CacheRecord{kUrl, 200, "stale", kNow - 7200s, 3600s});
    CHECK_THROWS_AS(cache.get_or_fetch(kUrl, f.fn(), 3600s, CacheMode::Offline), Error);
    CHECK(f.calls == 0);
}

TEST_CASE("expired record is refetched exactly once and replaced") {
    TempDir dir;
    Cache cache(dir.path(), [] { return kNow; });
    cache.write(CacheRecord{kUrl, 200, "stale", kNow - 7200s, 3600s});
    CountingFetcher f;
    auto r = cache.get_or_fetch(kUrl, f.fn(), 3600s, CacheMode::Online);
    CHECK(f.calls == 1);
    CHECK_FALSE(r.from_cache);
    CHECK(r.body == "fresh");
    auto stored = cache.read(kUrl);
    REQUIRE(stored);
    CHECK(stored->body == "fresh");
    CHECK(stored->fetched_at == kNow);

    auto again = cache.get_or_fetch(kUrl, f.fn(), 3600s, CacheMode::Online);
    CHECK(again.from_cache);
    CHECK(f.calls == 1);
}

TEST_CASE("a shorter requested ttl overrides the stored one") {
    TempDir dir;
    Cache cache(dir.path(), [] { return kNow; });
    cache.write(CacheRecord{kUrl, 200, "cached", kNow - 100s, 3600s});
    CountingFetcher f;
    cache.get_or_fetch(kUrl, f.fn(), 60s, CacheMode::Online);
    CHECK(f.calls == 1);
}

TEST_CASE("404 is cached, other statuses and transport errors are not") {
    TempDir dir;
    Cache cache(dir.path(), [] { return kNow; });
    CountingFetcher f;
    f.status = 404;
    f.body = "";
    CHECK(cache.get_or_fetch(kUrl, f.fn(), 3600s, CacheMode::Online).status == 404);
    CHECK(cache.get_or_fetch(kUrl, f.fn(), 3600s, CacheMode::Online).from_cache);
    CHECK(f.calls == 1);

    const std::string with_body = kUrl + "/missing";
    f.body = R"({"errors":[{"detail":"Not Found"}]})";
    CHECK(cache.get_or_fetch(with_body, f.fn(), 3600s, CacheMode::Online).body.empty());
    CHECK(cache.read(with_body)->status == 404);
    CHECK(f.calls == 2);

    const std::string other = kUrl + "/versions";
    f.status = 429;
    f.body = "slow down";
    CHECK(cache.get_or_fetch(other, f.fn(), 3600s, CacheMode::Online).status == 429);
    CHECK_FALSE(cache.read(other));

    f.fail = true;
    CHECK_THROWS_AS(cache.get_or_fetch(other, f.fn(), 3600s, CacheMode::Online), Error);
    CHECK_FALSE(cache.read(other));
    int before = f.calls;
    CHECK_THROWS_AS(cache.get_or_fetch(other, f.fn(), 3600s, CacheMode::Online), Error);
    CHECK(f.calls == before + 1);
}

TEST_CASE("records round-trip through the files") {
    TempDir dir;
    Cache cache(dir.path());
    CacheRecord record{kUrl, 200, std::string("binary\0body\n", 12), kNow, 1234s};
    cache.write(record);
    CHECK(cache.read(kUrl) == record);

    CacheRecord missing{kUrl + "/x", 404, "", kNow, 10s};
    cache.write(missing);
    CHECK(cache.read(kUrl + "/x") == missing);
}

TEST_CASE("on-disk layout is a sha256-named envelope beside the body") {
    TempDir dir;
    Cache cache(dir.path());
    cache.write(CacheRecord{kUrl, 200, "body", kNow, 86400s});
    auto hex = sha256_hex(kUrl);
    CHECK(cache.envelope_path(kUrl) == dir.path() / (hex + ".json"));
    CHECK(read_text(dir.path() / (hex + ".body")) == "body");
    auto envelope = nlohmann::json::parse(read_text(dir.path() / (hex + ".json")));
    CHECK(envelope.size() == 4);
    CHECK(envelope["url"] == kUrl);
    CHECK(envelope["status"] == 200);
    CHECK(envelope["fetched_at"] == format_timestamp(kNow));
    CHECK(envelope["ttl_seconds"] == 86400);
}

TEST_CASE("non-cacheable records are rejected") {
    TempDir dir;
    Cache cache(dir.path());
    CHECK_THROWS_AS(cache.write(CacheRecord{kUrl, 500, "x", kNow, 1s}), Error);
    CHECK_THROWS_AS(cache.write(CacheRecord{kUrl, 404, "x", kNow, 1s}), Error);
    CHECK_THROWS_AS(cache.write(CacheRecord{kUrl, 200, "", kNow, 1s}), Error);
    CHECK_THROWS_AS(cache.write(CacheRecord{"relative/path", 200, "x", kNow, 1s}), Error);
}

TEST_CASE("cache directory resolution order") {
    CHECK(Cache::resolve_directory(std::filesystem::path("/explicit")) == "/explicit");
    ::setenv("CRATE2BIB_CACHE_DIR", "/from-env", 1);
    CHECK(Cache::resolve_directory(std::nullopt) == "/from-env");
    CHECK(Cache::resolve_directory(std::filesystem::path("/explicit")) == "/explicit");
    ::unsetenv("CRATE2BIB_CACHE_DIR");
    ::setenv("XDG_CACHE_HOME", "/xdg", 1);
    CHECK(Cache::resolve_directory(std::nullopt) == "/xdg/crate2bib");
    ::unsetenv("XDG_CACHE_HOME");
}
