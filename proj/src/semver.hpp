#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crate2bib {

/// SemVer 2.0.0 version: MAJOR.MINOR.PATCH[-prerelease][+build].
///
/// Ordering follows semver precedence. Build metadata does not affect
/// precedence; it is only used as a final tie-break so the order is total.
struct SemVer {
    std::uint64_t major = 0;
    std::uint64_t minor = 0;
    std::uint64_t patch = 0;
    std::vector<std::string> prerelease;
    std::string build;

    bool is_prerelease() const noexcept { return !prerelease.empty(); }

    /// Precedence equality (ignores build metadata).
    bool same_precedence(const SemVer& other) const;

    std::string to_string() const;

    friend std::strong_ordering operator<=>(const SemVer& a, const SemVer& b);
    friend bool operator==(const SemVer& a, const SemVer& b) {
        return (a <=> b) == std::strong_ordering::equal;
    }
};

std::optional<SemVer> parse_semver(std::string_view text);

}  // namespace crate2bib
