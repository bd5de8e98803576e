#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crate2bib {

struct CffAuthor {
    enum class Kind { Person, Entity };

    Kind kind = Kind::Person;
    std::string family_names;  // Person; includes any `name-particle` prefix
    std::string given_names;   // Person, may be empty
    std::string name;          // Entity
    std::optional<std::string> orcid;

    /// Family name for Persons, name for Entities.
    const std::string& primary_name() const { return kind == Kind::Person ? family_names : name; }

    friend bool operator==(const CffAuthor&, const CffAuthor&) = default;
};

struct PreferredCitation {
    std::string entry_kind;  // CFF `type`, e.g. "article"
    std::string title;
    std::vector<CffAuthor> authors;
    std::optional<int> year;
    std::optional<std::string> doi;
    std::optional<std::string> journal;
    std::optional<std::string> volume;
    std::optional<std::string> pages;
    std::optional<std::string> url;

    friend bool operator==(const PreferredCitation&, const PreferredCitation&) = default;
};

/// The subset of a CITATION.cff (1.2.x) document used for bibliography output.
struct CffDocument {
    std::string cff_version;
    std::string message;
    std::string title;
    std::vector<CffAuthor> authors;
    std::optional<std::string> version;
    std::optional<std::string> doi;
    std::optional<std::chrono::year_month_day> date_released;
    std::optional<std::string> url;
    std::optional<std::string> repository_code;
    std::optional<std::string> license;
    std::optional<PreferredCitation> preferred_citation;

    friend bool operator==(const CffDocument&, const CffDocument&) = default;
};

/// Parses CITATION.cff text. Unknown keys are ignored. Non-fatal findings
/// (missing or unknown `cff-version`, unusable `year`) are appended to
/// `warnings` when given.
///
/// Throws Error with kind NotYaml, SchemaViolation or BadDate.
CffDocument parse_cff(std::string_view raw_text, std::vector<std::string>* warnings = nullptr);

}  // namespace crate2bib
