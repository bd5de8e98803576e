#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bib_model.hpp"
#include "cff_parser.hpp"
#include "registry_client.hpp"

namespace crate2bib {

enum class OriginKind { RegistryMetadata, CitationCff, CffPreferredCitation };

/// `registry`, `cff` or `cff-preferred`.
std::string_view origin_kind_name(OriginKind kind) noexcept;

struct Origin {
    OriginKind kind = OriginKind::RegistryMetadata;
    std::string source_url;  // API URL or raw-file URL
};

struct Candidate {
    BibEntry entry;
    Origin origin;
    std::vector<std::string> warnings;
};

/// An entry plus the non-fatal findings produced while building it.
struct ConvertedEntry {
    BibEntry entry;
    std::vector<std::string> warnings;
};

struct GatherOptions {
    bool probe_cff = true;
    std::optional<std::string> preferred_branch;  // tried before main/master
};

/// Splits a display name into family (last word) and given names.
std::pair<std::string, std::string> split_display_name(std::string_view display_name);

/// `Family, Given and Family and {Entity Name}`
std::string join_authors(const std::vector<CffAuthor>& authors);

/// @software entry from registry metadata for one version.
ConvertedEntry package_to_bib(const PackageMeta& meta, const VersionInfo& version,
                              const std::set<std::string>& taken_keys = {});

/// The CFF top-level @software entry, followed by the preferred-citation
/// entry when the document has one. CFF `version` wins over the resolved
/// registry version; a mismatch is reported as a warning.
std::vector<ConvertedEntry> cff_to_bib(const CffDocument& cff, std::string_view package_name,
                                       const VersionInfo& resolved_version,
                                       const std::set<std::string>& taken_keys = {});

/// `article`, `inproceedings`, `software` or `misc` for a CFF reference type.
std::string_view bib_type_for_cff_type(std::string_view cff_type) noexcept;

/// Full pipeline: registry metadata, version resolution, optional CFF probe.
/// Returns registry, cff, cff-preferred candidates in that order with
/// distinct keys. Registry and resolution errors propagate; CFF problems
/// become warnings on the first candidate.
std::vector<Candidate> gather_candidates(std::string_view name, std::string_view version_request,
                                         FetchContext& ctx, const GatherOptions& options = {});

/// Each candidate as `% origin: <kind> <url>` plus its BibTeX, separated by
/// blank lines.
std::string render_candidates(const std::vector<Candidate>& candidates);

}  // namespace crate2bib
