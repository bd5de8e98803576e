#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace crate2bib {

/// One BibTeX entry: `@type{key, name = {value}, ...}`.
///
/// Field values are stored in their logical (unescaped) form; escaping
/// happens in serialize() and is undone by parse_entry(). Fields are kept
/// sorted by name; serialize() applies the canonical output order.
///
/// `url` and `doi` are verbatim fields: they are written without escaping and
/// must not contain `{`, `}` or `\`.
class BibEntry {
public:
    BibEntry(std::string entry_type, std::string citation_key);

    const std::string& entry_type() const noexcept { return entry_type_; }
    const std::string& citation_key() const noexcept { return citation_key_; }
    const std::map<std::string, std::string>& fields() const noexcept { return fields_; }

    /// Inserts or replaces a field. Throws Error{InvalidInput} on an invalid
    /// name or a verbatim value containing braces/backslashes.
    void set(std::string name, std::string value);
    /// Inserts a field; throws Error{InvalidInput} if it already exists.
    void add(std::string name, std::string value);
    std::optional<std::string> get(std::string_view name) const;
    void set_citation_key(std::string key);

    friend bool operator==(const BibEntry&, const BibEntry&) = default;

private:
    std::string entry_type_;
    std::string citation_key_;
    std::map<std::string, std::string> fields_;
};

bool is_valid_citation_key(std::string_view key);
bool is_valid_field_name(std::string_view name);
bool is_verbatim_field(std::string_view name);

/// Field order used by serialize(); unlisted fields follow alphabetically.
const std::vector<std::string_view>& canonical_field_order();

/// Transliterates common Latin letters with diacritics to ASCII and keeps
/// only `[A-Za-z0-9]`.
std::string key_stem_from_name(std::string_view name);

/// `FamilyYear` with `a`, `b`, ... `z`, `aa`, ... appended on collision.
/// Throws Error{Unkeyable} when the name has no usable characters and
/// Error{InvalidInput} when year is not a 4-digit number.
std::string generate_key(std::string_view primary_family_name, int year, const std::set<std::string>& taken_keys);

/// generate_key(), falling back to `fallback_stem` (e.g. a package name)
/// when the family name is missing or unkeyable.
std::string generate_key_or(std::string_view primary_family_name, std::string_view fallback_stem, int year,
                            const std::set<std::string>& taken_keys);

std::string escape_bibtex(std::string_view value);
/// Inverse of escape_bibtex() on its image; other markup passes through.
std::string unescape_bibtex(std::string_view value);

std::string serialize(const BibEntry& entry);

/// Parses exactly one entry. Leading `%` comment lines are skipped.
/// Throws Error{Syntax}.
BibEntry parse_entry(std::string_view text);

}  // namespace crate2bib
