#include "crate2bib/crate2bib.h"

#include <memory>
#include <string>
#include <vector>

#include "cache.hpp"
#include "converter.hpp"
#include "error.hpp"
#include "http.hpp"

using namespace crate2bib;

struct c2b_client {
    HttpFetcher http;
    Cache cache;
    CacheMode mode;
    std::chrono::seconds ttl;
};

struct c2b_result {
    struct Item {
        std::string bibtex;
        c2b_origin_kind kind;
        std::string origin_name;
        std::string origin_url;
        std::vector<std::string> warnings;
    };
    std::vector<Item> items;
    std::string rendered;
};

namespace {

thread_local std::string last_error;

c2b_status status_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput:
        case ErrorKind::MalformedUrl: return C2B_ERR_INVALID_ARGUMENT;
        case ErrorKind::NotFound: return C2B_ERR_NOT_FOUND;
        case ErrorKind::NoMatch: return C2B_ERR_NO_MATCH;
        case ErrorKind::AllYanked: return C2B_ERR_ALL_YANKED;
        case ErrorKind::RateLimited: return C2B_ERR_RATE_LIMITED;
        case ErrorKind::Network: return C2B_ERR_NETWORK;
        case ErrorKind::OfflineMiss: return C2B_ERR_OFFLINE_MISS;
        case ErrorKind::Malformed: return C2B_ERR_MALFORMED;
        case ErrorKind::Io: return C2B_ERR_IO;
        default: return C2B_ERR_INTERNAL;
    }
}

template <typename Fn>
c2b_status guarded(Fn&& fn) {
    try {
        fn();
        last_error.clear();
        return C2B_OK;
    } catch (const Error& e) {
        last_error = std::string(error_kind_name(e.kind())) + ": " + e.what();
        return status_for(e.kind());
    } catch (const std::exception& e) {
        last_error = e.what();
        return C2B_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return C2B_ERR_INTERNAL;
    }
}

const c2b_result::Item* item_at(const c2b_result* result, size_t index) {
    if (!result || index >= result->items.size()) {
        return nullptr;
    }
    return &result->items[index];
}

}  // namespace

extern "C" {

void c2b_config_init(c2b_config* config) {
    if (!config) {
        return;
    }
    *config = c2b_config{};
    config->min_request_interval_ms = 1000;
    config->timeout_ms = 10000;
    config->ttl_seconds = kDefaultTtl.count();
}

c2b_status c2b_client_new(const c2b_config* config, c2b_client** out) {
    return guarded([&] {
        if (!out) {
            throw Error(ErrorKind::InvalidInput, "out pointer is NULL");
        }
        *out = nullptr;
        c2b_config defaults;
        c2b_config_init(&defaults);
        const c2b_config& cfg = config ? *config : defaults;

        ClientConfig cc;
        if (cfg.base_url) cc.base_url = cfg.base_url;
        if (cfg.user_agent) cc.user_agent = cfg.user_agent;
        if (cfg.github_raw_base) cc.github_raw_base = cfg.github_raw_base;
        if (cfg.codeberg_base) cc.codeberg_base = cfg.codeberg_base;
        cc.min_request_interval = std::chrono::milliseconds(cfg.min_request_interval_ms);
        cc.timeout = std::chrono::milliseconds(cfg.timeout_ms);
        if (cfg.ttl_seconds < 0) {
            throw Error(ErrorKind::InvalidInput, "ttl must not be negative");
        }

        std::optional<std::filesystem::path> dir;
        if (cfg.cache_dir) {
            dir = cfg.cache_dir;
        }
        *out = new c2b_client{
            HttpFetcher(std::move(cc), nullptr),
            Cache(Cache::resolve_directory(dir)),
            cfg.offline ? CacheMode::Offline : CacheMode::Online,
            std::chrono::seconds(cfg.ttl_seconds),
        };
    });
}

void c2b_client_free(c2b_client* client) { delete client; }

c2b_status c2b_gather(c2b_client* client, const char* package, const char* version, int probe_cff,
                      const char* branch, c2b_result** out) {
    return guarded([&] {
        if (!client || !out) {
            throw Error(ErrorKind::InvalidInput, "client and out must not be NULL");
        }
        *out = nullptr;
        if (!package) {
            throw Error(ErrorKind::InvalidInput, "package name is NULL");
        }
        FetchContext ctx{client->http, client->cache, client->mode, client->ttl};
        GatherOptions options;
        options.probe_cff = probe_cff != 0;
        if (branch && *branch) {
            options.preferred_branch = branch;
        }
        auto candidates = gather_candidates(package, version ? version : "latest", ctx, options);

        auto result = std::make_unique<c2b_result>();
        for (const auto& c : candidates) {
            result->items.push_back(c2b_result::Item{
                serialize(c.entry),
                static_cast<c2b_origin_kind>(c.origin.kind),
                std::string(origin_kind_name(c.origin.kind)),
                c.origin.source_url,
                c.warnings,
            });
        }
        result->rendered = render_candidates(candidates);
        *out = result.release();
    });
}

size_t c2b_result_count(const c2b_result* result) { return result ? result->items.size() : 0; }

const char* c2b_result_bibtex(const c2b_result* result, size_t index) {
    auto* item = item_at(result, index);
    return item ? item->bibtex.c_str() : nullptr;
}

c2b_origin_kind c2b_result_origin_kind(const c2b_result* result, size_t index) {
    auto* item = item_at(result, index);
    return item ? item->kind : C2B_ORIGIN_REGISTRY;
}

const char* c2b_result_origin_name(const c2b_result* result, size_t index) {
    auto* item = item_at(result, index);
    return item ? item->origin_name.c_str() : nullptr;
}

const char* c2b_result_origin_url(const c2b_result* result, size_t index) {
    auto* item = item_at(result, index);
    return item ? item->origin_url.c_str() : nullptr;
}

size_t c2b_result_warning_count(const c2b_result* result, size_t index) {
    auto* item = item_at(result, index);
    return item ? item->warnings.size() : 0;
}

const char* c2b_result_warning(const c2b_result* result, size_t index, size_t warning) {
    auto* item = item_at(result, index);
    if (!item || warning >= item->warnings.size()) {
        return nullptr;
    }
    return item->warnings[warning].c_str();
}

const char* c2b_result_render(const c2b_result* result) { return result ? result->rendered.c_str() : nullptr; }

void c2b_result_free(c2b_result* result) { delete result; }

const char* c2b_last_error_message(void) { return last_error.c_str(); }

const char* c2b_status_name(c2b_status status) {
    switch (status) {
        case C2B_OK: return "Ok";
        case C2B_ERR_INVALID_ARGUMENT: return "InvalidArgument";
        case C2B_ERR_NOT_FOUND: return "NotFound";
        case C2B_ERR_NO_MATCH: return "NoMatch";
        case C2B_ERR_ALL_YANKED: return "AllYanked";
        case C2B_ERR_RATE_LIMITED: return "RateLimited";
        case C2B_ERR_NETWORK: return "Network";
        case C2B_ERR_OFFLINE_MISS: return "OfflineMiss";
        case C2B_ERR_MALFORMED: return "Malformed";
        case C2B_ERR_IO: return "Io";
        case C2B_ERR_INTERNAL: return "Internal";
    }
    return "Unknown";
}

}  // extern "C"
