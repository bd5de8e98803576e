#include "converter.hpp"

#include <cctype>

#include "error.hpp"
#include "repo_probe.hpp"

namespace crate2bib {
namespace {

int year_of(Timestamp ts) {
    return static_cast<int>(std::chrono::year_month_day{std::chrono::floor<std::chrono::days>(ts)}.year());
}

unsigned month_of(Timestamp ts) {
    return static_cast<unsigned>(std::chrono::year_month_day{std::chrono::floor<std::chrono::days>(ts)}.month());
}

// Verbatim fields may not carry braces or backslashes.
std::string sanitize_verbatim(std::string_view value) {
    std::string out;
    for (char c : value) {
        switch (c) {
            case '{': out += "%7B"; break;
            case '}': out += "%7D"; break;
            case '\\': out += "%5C"; break;
            default: out += c;
        }
    }
    return out;
}

std::string_view strip_v(std::string_view version) {
    if (!version.empty() && (version.front() == 'v' || version.front() == 'V')) {
        version.remove_prefix(1);
    }
    return version;
}

std::string crates_io_url(std::string_view name) { return "https://crates.io/crates/" + std::string(name); }

}  // namespace

std::string_view origin_kind_name(OriginKind kind) noexcept {
    switch (kind) {
        case OriginKind::RegistryMetadata: return "registry";
        case OriginKind::CitationCff: return "cff";
        case OriginKind::CffPreferredCitation: return "cff-preferred";
    }
    return "unknown";
}

std::pair<std::string, std::string> split_display_name(std::string_view display_name) {
    std::vector<std::string> words;
    std::string word;
    for (char c : display_name) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!word.empty()) {
                words.push_back(std::move(word));
                word.clear();
            }
        } else {
            word += c;
        }
    }
    if (!word.empty()) {
        words.push_back(std::move(word));
    }
    if (words.empty()) {
        return {};
    }
    std::string family = words.back();
    std::string given;
    for (std::size_t i = 0; i + 1 < words.size(); ++i) {
        if (!given.empty()) {
            given += ' ';
        }
        given += words[i];
    }
    return {family, given};
}

std::string join_authors(const std::vector<CffAuthor>& authors) {
    std::string out;
    for (const auto& a : authors) {
        if (!out.empty()) {
            out += " and ";
        }
        if (a.kind == CffAuthor::Kind::Entity) {
            out += "{" + a.name + "}";
        } else {
            out += a.family_names;
            if (!a.given_names.empty()) {
                out += ", " + a.given_names;
            }
        }
    }
    return out;
}

ConvertedEntry package_to_bib(const PackageMeta& meta, const VersionInfo& version,
                              const std::set<std::string>& taken_keys) {
    std::vector<std::string> warnings;
    std::string family;
    std::string author;
    if (version.published_by) {
        auto [fam, given] = split_display_name(version.published_by->display_name);
        family = fam;
        author = given.empty() ? fam : fam + ", " + given;
    }
    if (author.empty()) {
        warnings.push_back("registry lists no publisher for " + meta.name + " " + version.semver +
                           "; author field omitted");
    }

    const int year = year_of(version.published_at);
    BibEntry entry("software", generate_key_or(family, meta.name, year, taken_keys));
    if (!author.empty()) {
        entry.set("author", author);
    }
    entry.set("title", meta.name);
    entry.set("version", version.semver);
    entry.set("year", std::to_string(year));
    entry.set("month", std::to_string(month_of(version.published_at)));
    entry.set("url", sanitize_verbatim(crates_io_url(meta.name)));
    if (version.license) {
        entry.set("license", *version.license);
    }
    return {std::move(entry), std::move(warnings)};
}

std::string_view bib_type_for_cff_type(std::string_view cff_type) noexcept {
    if (cff_type == "article") return "article";
    if (cff_type == "conference-paper") return "inproceedings";
    if (cff_type == "software") return "software";
    return "misc";
}

std::vector<ConvertedEntry> cff_to_bib(const CffDocument& cff, std::string_view package_name,
                                       const VersionInfo& resolved_version,
                                       const std::set<std::string>& taken_keys) {
    std::vector<ConvertedEntry> out;
    std::set<std::string> taken = taken_keys;
    const int fallback_year = cff.date_released ? static_cast<int>(cff.date_released->year())
                                                : year_of(resolved_version.published_at);

    {
        std::vector<std::string> warnings;
        BibEntry entry("software",
                       generate_key_or(cff.authors.front().primary_name(), package_name, fallback_year, taken));
        entry.set("author", join_authors(cff.authors));
        entry.set("title", cff.title);
        if (cff.version) {
            entry.set("version", *cff.version);
            if (strip_v(*cff.version) != strip_v(resolved_version.semver)) {
                warnings.push_back("CITATION.cff version " + *cff.version + " differs from registry version " +
                                   resolved_version.semver);
            }
        } else {
            entry.set("version", resolved_version.semver);
        }
        if (cff.date_released) {
            entry.set("year", std::to_string(static_cast<int>(cff.date_released->year())));
            entry.set("month", std::to_string(static_cast<unsigned>(cff.date_released->month())));
        }
        if (cff.doi) {
            entry.set("doi", sanitize_verbatim(*cff.doi));
        }
        if (cff.url) {
            entry.set("url", sanitize_verbatim(*cff.url));
        } else if (cff.repository_code) {
            entry.set("url", sanitize_verbatim(*cff.repository_code));
        }
        if (cff.license) {
            entry.set("license", *cff.license);
        }
        taken.insert(entry.citation_key());
        out.push_back({std::move(entry), std::move(warnings)});
    }

    if (cff.preferred_citation) {
        const PreferredCitation& pc = *cff.preferred_citation;
        const int year = pc.year.value_or(fallback_year);
        BibEntry entry(std::string(bib_type_for_cff_type(pc.entry_kind)),
                       generate_key_or(pc.authors.front().primary_name(), package_name, year, taken));
        entry.set("author", join_authors(pc.authors));
        entry.set("title", pc.title);
        if (pc.year) {
            entry.set("year", std::to_string(*pc.year));
        }
        if (pc.journal) {
            entry.set("journal", *pc.journal);
        }
        if (pc.volume) {
            entry.set("volume", *pc.volume);
        }
        if (pc.pages) {
            entry.set("pages", *pc.pages);
        }
        if (pc.doi) {
            entry.set("doi", sanitize_verbatim(*pc.doi));
        }
        if (pc.url) {
            entry.set("url", sanitize_verbatim(*pc.url));
        }
        out.push_back({std::move(entry), {}});
    }
    return out;
}

std::vector<Candidate> gather_candidates(std::string_view name, std::string_view version_request,
                                         FetchContext& ctx, const GatherOptions& options) {
    const std::string normalized = normalize_package_name(name);
    const VersionRequest request = VersionRequest::parse(version_request);

    PackageMeta meta = fetch_package_meta(normalized, ctx);
    Resolution resolved = resolve_version(request, meta.versions);

    std::vector<Candidate> candidates;
    std::set<std::string> taken;

    ConvertedEntry registry = package_to_bib(meta, resolved.version, taken);
    taken.insert(registry.entry.citation_key());
    std::vector<std::string> warnings = std::move(resolved.warnings);
    warnings.insert(warnings.end(), registry.warnings.begin(), registry.warnings.end());
    candidates.push_back(Candidate{std::move(registry.entry),
                                   Origin{OriginKind::RegistryMetadata,
                                          crate_api_url(ctx.http.config().base_url, normalized)},
                                   std::move(warnings)});

    if (!options.probe_cff || !meta.repository_url) {
        return candidates;
    }
    auto degrade = [&](const std::string& message) { candidates.front().warnings.push_back(message); };

    RepoLocator locator;
    try {
        locator = parse_repo_url(*meta.repository_url);
    } catch (const Error& e) {
        degrade("skipping CITATION.cff probe: " + std::string(error_kind_name(e.kind())) + ": " + e.what());
        return candidates;
    }
    if (locator.host == RepoHost::Unsupported) {
        degrade("skipping CITATION.cff probe: repository host of " + locator.source_url + " is not supported");
        return candidates;
    }

    std::optional<CffFetchResult> fetched;
    try {
        fetched = fetch_citation_cff(locator, ctx, probe_branches(options.preferred_branch));
    } catch (const Error& e) {
        degrade("CITATION.cff probe failed: " + std::string(error_kind_name(e.kind())) + ": " + e.what());
        return candidates;
    }
    if (!fetched) {
        return candidates;
    }

    std::vector<std::string> parse_warnings;
    CffDocument cff;
    try {
        cff = parse_cff(fetched->raw_text, &parse_warnings);
    } catch (const Error& e) {
        degrade("ignoring CITATION.cff from " + fetched->fetched_from + ": " +
                std::string(error_kind_name(e.kind())) + ": " + e.what());
        return candidates;
    }

    auto converted = cff_to_bib(cff, meta.name, resolved.version, taken);
    for (std::size_t i = 0; i < converted.size(); ++i) {
        auto& c = converted[i];
        taken.insert(c.entry.citation_key());
        std::vector<std::string> w = parse_warnings;
        w.insert(w.end(), c.warnings.begin(), c.warnings.end());
        OriginKind kind = i == 0 ? OriginKind::CitationCff : OriginKind::CffPreferredCitation;
        candidates.push_back(Candidate{std::move(c.entry), Origin{kind, fetched->fetched_from}, std::move(w)});
    }
    return candidates;
}

std::string render_candidates(const std::vector<Candidate>& candidates) {
    std::string out;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (i > 0) {
            out += '\n';
        }
        const auto& c = candidates[i];
        out += "% origin: ";
        out += origin_kind_name(c.origin.kind);
        out += ' ';
        out += c.origin.source_url;
        out += '\n';
        out += serialize(c.entry);
    }
    return out;
}

}  // namespace crate2bib
