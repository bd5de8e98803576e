#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "http.hpp"
#include "registry_client.hpp"

namespace crate2bib {

enum class RepoHost { GitHub, Codeberg, Unsupported };

struct RepoLocator {
    RepoHost host = RepoHost::Unsupported;
    std::string owner;
    std::string repo;  // without a trailing `.git`
    std::string source_url;

    friend bool operator==(const RepoLocator&, const RepoLocator&) = default;
};

struct CffFetchResult {
    std::string raw_text;
    std::string branch;
    std::string path;
    std::string fetched_from;
};

/// Classifies the host and takes owner/repo from the first two path
/// segments; anything after them is ignored. Throws Error{MalformedUrl}.
RepoLocator parse_repo_url(std::string_view url);

/// Raw-file URL of `path` on `branch`.
std::string raw_file_url(const RepoLocator& locator, std::string_view branch, std::string_view path,
                         const ClientConfig& config);

/// `main`, `master`, with `preferred` (if any) tried first.
std::vector<std::string> probe_branches(const std::optional<std::string>& preferred = std::nullopt);

/// Tries `CITATION.cff` at the repository root on each branch in order and
/// returns the first 200. Returns nullopt when every probe is a 404.
/// Throws Error{Unsupported} for unsupported hosts and Error{Network} for
/// transport failures or unexpected statuses.
std::optional<CffFetchResult> fetch_citation_cff(const RepoLocator& locator, FetchContext& ctx,
                                                 std::span<const std::string> branches);
std::optional<CffFetchResult> fetch_citation_cff(const RepoLocator& locator, FetchContext& ctx);

}  // namespace crate2bib
