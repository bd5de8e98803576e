#include "registry_client.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <json.hpp>
#include <set>

#include "error.hpp"

namespace crate2bib {
namespace {

using nlohmann::json;

constexpr std::size_t kMaxVersionPages = 100;

std::string trim_trailing_slash(std::string_view base) {
    while (!base.empty() && base.back() == '/') {
        base.remove_suffix(1);
    }
    return std::string(base);
}

std::optional<std::string> optional_string(const json& object, const char* key) {
    auto it = object.find(key);
    if (it == object.end() || it->is_null()) {
        return std::nullopt;
    }
    if (!it->is_string()) {
        throw Error(ErrorKind::Malformed, std::string("registry field '") + key + "' is not a string");
    }
    auto value = it->get<std::string>();
    return value.empty() ? std::nullopt : std::optional(value);
}

json parse_json(std::string_view body, const char* what) {
    try {
        return json::parse(body);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Malformed, std::string(what) + " is not valid JSON: " + e.what());
    }
}

void check_status(const CacheLookup& r, const std::string& url, std::string_view name) {
    switch (r.status) {
        case 200: return;
        case 404: throw Error(ErrorKind::NotFound, "no package named '" + std::string(name) + "' on the registry");
        case 429: throw Error(ErrorKind::RateLimited, "registry rate limit hit for " + url);
        default: throw Error(ErrorKind::Network, "unexpected HTTP status " + std::to_string(r.status) + " for " + url);
    }
}

std::optional<std::uint64_t> parse_component(std::string_view s) {
    if (s.empty() || (s.size() > 1 && s.front() == '0')) {
        return std::nullopt;
    }
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

}  // namespace

CacheLookup FetchContext::get(const std::string& url) {
    return cache.get_or_fetch(url, [this](const std::string& u) { return http.get(u); }, ttl, mode);
}

std::string normalize_package_name(std::string_view name) {
    if (name.empty() || name.size() > 64) {
        throw Error(ErrorKind::InvalidInput, "package name must be 1-64 characters");
    }
    std::string out;
    for (char c : name) {
        char l = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (!((l >= 'a' && l <= 'z') || (l >= '0' && l <= '9') || l == '-' || l == '_')) {
            throw Error(ErrorKind::InvalidInput, "invalid package name '" + std::string(name) + "'");
        }
        out += l;
    }
    return out;
}

std::string crate_api_url(std::string_view base_url, std::string_view name) {
    return trim_trailing_slash(base_url) + "/api/v1/crates/" + std::string(name);
}

std::string crate_versions_api_url(std::string_view base_url, std::string_view name) {
    return crate_api_url(base_url, name) + "/versions";
}

PackageMeta parse_package_meta(std::string_view summary_json, const std::vector<std::string>& version_pages,
                               Timestamp fetched_at) {
    PackageMeta meta;
    try {
        json summary = parse_json(summary_json, "crate summary");
        const json& krate = summary.at("crate");
        meta.name = krate.at("name").get<std::string>();
        meta.description = optional_string(krate, "description");
        meta.repository_url = optional_string(krate, "repository");
        meta.homepage_url = optional_string(krate, "homepage");

        for (const auto& page : version_pages) {
            json body = parse_json(page, "version list");
            for (const json& v : body.at("versions")) {
                VersionInfo info;
                info.semver = v.at("num").get<std::string>();
                info.yanked = v.value("yanked", false);
                info.license = optional_string(v, "license");
                auto published = parse_timestamp(v.at("created_at").get<std::string>());
                if (!published) {
                    throw Error(ErrorKind::Malformed, "bad created_at for version " + info.semver);
                }
                info.published_at = *published;
                if (auto it = v.find("published_by"); it != v.end() && it->is_object()) {
                    auto display = optional_string(*it, "name");
                    if (!display) {
                        display = optional_string(*it, "login");
                    }
                    if (display) {
                        info.published_by = Publisher{*display, std::nullopt};
                    }
                }
                meta.versions.push_back(std::move(info));
            }
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Malformed, std::string("unexpected registry response: ") + e.what());
    }

    if (meta.name.empty() ||
        std::any_of(meta.name.begin(), meta.name.end(), [](unsigned char c) { return std::isspace(c); })) {
        throw Error(ErrorKind::Malformed, "registry returned an invalid package name");
    }
    if (meta.versions.empty()) {
        throw Error(ErrorKind::Malformed, "package '" + meta.name + "' has no published versions");
    }

    std::vector<std::pair<SemVer, VersionInfo>> keyed;
    std::set<std::string> seen;
    for (auto& v : meta.versions) {
        auto parsed = parse_semver(v.semver);
        if (!parsed) {
            throw Error(ErrorKind::Malformed, "registry version '" + v.semver + "' is not a semantic version");
        }
        if (!seen.insert(v.semver).second) {
            throw Error(ErrorKind::Malformed, "duplicate registry version '" + v.semver + "'");
        }
        // Allow a day of clock skew between us and the registry.
        if (v.published_at > fetched_at + std::chrono::days{1}) {
            throw Error(ErrorKind::Malformed, "version '" + v.semver + "' is published in the future");
        }
        keyed.emplace_back(std::move(*parsed), std::move(v));
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    meta.versions.clear();
    for (auto& [_, v] : keyed) {
        meta.versions.push_back(std::move(v));
    }
    return meta;
}

PackageMeta fetch_package_meta(std::string_view name, FetchContext& ctx) {
    const std::string normalized = normalize_package_name(name);
    const std::string& base = ctx.http.config().base_url;

    const std::string summary_url = crate_api_url(base, normalized);
    CacheLookup summary = ctx.get(summary_url);
    check_status(summary, summary_url, normalized);
    parse_json(summary.body, "registry summary");  // fail before spending a second request

    const std::string versions_url = crate_versions_api_url(base, normalized);
    std::vector<std::string> pages;
    std::string url = versions_url;
    for (std::size_t i = 0; i < kMaxVersionPages; ++i) {
        CacheLookup page = ctx.get(url);
        check_status(page, url, normalized);
        pages.push_back(std::move(page.body));

        std::optional<std::string> next;
        try {
            json body = json::parse(pages.back());
            if (auto meta = body.find("meta"); meta != body.end() && meta->is_object()) {
                next = optional_string(*meta, "next_page");
            }
        } catch (const json::exception&) {
            // reported by parse_package_meta
        }
        if (!next) {
            break;
        }
        url = next->front() == '?' ? versions_url + *next : trim_trailing_slash(base) + *next;
    }
    return parse_package_meta(summary.body, pages, now_seconds());
}

VersionRequest VersionRequest::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

    VersionRequest request;
    if (text.empty() || text == "latest") {
        return request;
    }
    if (auto exact = parse_semver(text)) {
        request.kind = Kind::Exact;
        request.exact = std::move(*exact);
        return request;
    }
    auto dot = text.find('.');
    auto major = parse_component(text.substr(0, dot));
    std::optional<std::uint64_t> minor;
    if (dot != std::string_view::npos) {
        minor = parse_component(text.substr(dot + 1));
    }
    if (!major || (dot != std::string_view::npos && !minor)) {
        throw Error(ErrorKind::InvalidInput,
                    "invalid version request '" + std::string(text) + "' (expected latest, X, X.Y or X.Y.Z)");
    }
    request.kind = Kind::Partial;
    request.major = *major;
    request.minor = minor;
    return request;
}

Resolution resolve_version(const VersionRequest& request, std::span<const VersionInfo> available) {
    if (available.empty()) {
        throw Error(ErrorKind::NoMatch, "no versions available");
    }
    std::optional<std::pair<SemVer, const VersionInfo*>> best;
    bool any_match = false;
    for (const auto& v : available) {
        auto parsed = parse_semver(v.semver);
        if (!parsed) {
            continue;
        }
        bool matches = false;
        switch (request.kind) {
            case VersionRequest::Kind::Latest:
                matches = !parsed->is_prerelease();
                break;
            case VersionRequest::Kind::Partial:
                matches = !parsed->is_prerelease() && parsed->major == request.major &&
                          (!request.minor || parsed->minor == *request.minor);
                break;
            case VersionRequest::Kind::Exact:
                matches = parsed->same_precedence(request.exact) &&
                          (request.exact.build.empty() || parsed->build == request.exact.build);
                break;
        }
        if (!matches) {
            continue;
        }
        any_match = true;
        if (v.yanked && request.kind != VersionRequest::Kind::Exact) {
            continue;
        }
        if (!best || *parsed > best->first) {
            best.emplace(std::move(*parsed), &v);
        }
    }
    if (!any_match) {
        throw Error(ErrorKind::NoMatch, "no published version satisfies the request");
    }
    if (!best) {
        throw Error(ErrorKind::AllYanked, "every matching version has been yanked");
    }
    Resolution out{*best->second, {}};
    if (out.version.yanked) {
        out.warnings.push_back("version " + out.version.semver + " has been yanked by its publishers");
    }
    return out;
}

Resolution resolve_version(std::string_view request, std::span<const VersionInfo> available) {
    return resolve_version(VersionRequest::parse(request), available);
}

}  // namespace crate2bib
