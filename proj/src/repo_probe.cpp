#include "repo_probe.hpp"

#include <algorithm>

#include "error.hpp"
#include "url.hpp"

namespace crate2bib {
namespace {

constexpr std::string_view kCitationPath = "CITATION.cff";

std::string trim_slash(std::string_view s) {
    while (!s.empty() && s.back() == '/') {
        s.remove_suffix(1);
    }
    return std::string(s);
}

}  // namespace

RepoLocator parse_repo_url(std::string_view text) {
    auto url = parse_url(text);
    if (!url || (url->scheme != "http" && url->scheme != "https")) {
        throw Error(ErrorKind::MalformedUrl, "not an absolute http(s) URL: " + std::string(text));
    }
    RepoLocator locator;
    locator.source_url = std::string(text);
    if (url->host == "github.com" || url->host == "www.github.com") {
        locator.host = RepoHost::GitHub;
    } else if (url->host == "codeberg.org" || url->host == "www.codeberg.org") {
        locator.host = RepoHost::Codeberg;
    }

    auto segments = url->segments();
    if (segments.size() >= 1) {
        locator.owner = segments[0];
    }
    if (segments.size() >= 2) {
        locator.repo = segments[1];
        if (locator.repo.ends_with(".git")) {
            locator.repo.resize(locator.repo.size() - 4);
        }
    }
    if (locator.host != RepoHost::Unsupported && (locator.owner.empty() || locator.repo.empty())) {
        throw Error(ErrorKind::MalformedUrl, "repository URL lacks owner/repository: " + std::string(text));
    }
    return locator;
}

std::string raw_file_url(const RepoLocator& locator, std::string_view branch, std::string_view path,
                         const ClientConfig& config) {
    const std::string b(branch);
    const std::string p(path);
    switch (locator.host) {
        case RepoHost::GitHub:
            return trim_slash(config.github_raw_base) + "/" + locator.owner + "/" + locator.repo + "/" + b + "/" + p;
        case RepoHost::Codeberg:
            return trim_slash(config.codeberg_base) + "/" + locator.owner + "/" + locator.repo + "/raw/branch/" + b +
                   "/" + p;
        case RepoHost::Unsupported:
            break;
    }
    throw Error(ErrorKind::Unsupported, "no raw-file access for " + locator.source_url);
}

std::vector<std::string> probe_branches(const std::optional<std::string>& preferred) {
    std::vector<std::string> out;
    if (preferred && !preferred->empty()) {
        out.push_back(*preferred);
    }
    for (const char* b : {"main", "master"}) {
        if (std::find(out.begin(), out.end(), b) == out.end()) {
            out.emplace_back(b);
        }
    }
    return out;
}

std::optional<CffFetchResult> fetch_citation_cff(const RepoLocator& locator, FetchContext& ctx,
                                                 std::span<const std::string> branches) {
    if (locator.host == RepoHost::Unsupported) {
        throw Error(ErrorKind::Unsupported, "repository host is not supported: " + locator.source_url);
    }
    for (const auto& branch : branches) {
        std::string url = raw_file_url(locator, branch, kCitationPath, ctx.http.config());
        CacheLookup response = ctx.get(url);
        if (response.status == 200 && !response.body.empty()) {
            return CffFetchResult{std::move(response.body), branch, std::string(kCitationPath), url};
        }
        if (response.status != 404 && response.status != 200) {
            throw Error(ErrorKind::Network, "unexpected HTTP status " + std::to_string(response.status) + " for " + url);
        }
    }
    return std::nullopt;
}

std::optional<CffFetchResult> fetch_citation_cff(const RepoLocator& locator, FetchContext& ctx) {
    static const std::vector<std::string> defaults = probe_branches();
    return fetch_citation_cff(locator, ctx, defaults);
}

}  // namespace crate2bib
