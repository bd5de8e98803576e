#include "semver.hpp"

#include <algorithm>
#include <charconv>

namespace crate2bib {
namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool is_ident_char(char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '-';
}

std::optional<std::uint64_t> parse_numeric(std::string_view s) {
    if (!all_digits(s) || (s.size() > 1 && s.front() == '0')) {
        return std::nullopt;
    }
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::strong_ordering compare_identifier(const std::string& a, const std::string& b) {
    bool a_num = all_digits(a);
    bool b_num = all_digits(b);
    if (a_num && b_num) {
        // No leading zeros, so length orders first.
        if (a.size() != b.size()) {
            return a.size() <=> b.size();
        }
        return a.compare(b) <=> 0;
    }
    if (a_num != b_num) {
        return a_num ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.compare(b) <=> 0;
}

std::strong_ordering compare_precedence(const SemVer& a, const SemVer& b) {
    if (auto c = a.major <=> b.major; c != 0) return c;
    if (auto c = a.minor <=> b.minor; c != 0) return c;
    if (auto c = a.patch <=> b.patch; c != 0) return c;
    if (a.prerelease.empty() != b.prerelease.empty()) {
        return a.prerelease.empty() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    std::size_t n = std::min(a.prerelease.size(), b.prerelease.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = compare_identifier(a.prerelease[i], b.prerelease[i]); c != 0) return c;
    }
    return a.prerelease.size() <=> b.prerelease.size();
}

}  // namespace

bool SemVer::same_precedence(const SemVer& other) const {
    return compare_precedence(*this, other) == 0;
}

std::strong_ordering operator<=>(const SemVer& a, const SemVer& b) {
    if (auto c = compare_precedence(a, b); c != 0) return c;
    return a.build.compare(b.build) <=> 0;
}

std::string SemVer::to_string() const {
    std::string out = std::to_string(major) + '.' + std::to_string(minor) + '.' + std::to_string(patch);
    for (std::size_t i = 0; i < prerelease.size(); ++i) {
        out += (i == 0 ? '-' : '.');
        out += prerelease[i];
    }
    if (!build.empty()) {
        out += '+';
        out += build;
    }
    return out;
}

std::optional<SemVer> parse_semver(std::string_view text) {
    SemVer v;
    std::string_view core = text;

    if (auto plus = core.find('+'); plus != std::string_view::npos) {
        std::string_view build = core.substr(plus + 1);
        for (auto part : split(build, '.')) {
            if (part.empty() || !std::all_of(part.begin(), part.end(), is_ident_char)) {
                return std::nullopt;
            }
        }
        v.build = std::string(build);
        core = core.substr(0, plus);
    }
    if (auto dash = core.find('-'); dash != std::string_view::npos) {
        for (auto part : split(core.substr(dash + 1), '.')) {
            if (part.empty() || !std::all_of(part.begin(), part.end(), is_ident_char)) {
                return std::nullopt;
            }
            if (all_digits(part) && part.size() > 1 && part.front() == '0') {
                return std::nullopt;
            }
            v.prerelease.emplace_back(part);
        }
        core = core.substr(0, dash);
    }

    auto nums = split(core, '.');
    if (nums.size() != 3) {
        return std::nullopt;
    }
    auto major = parse_numeric(nums[0]);
    auto minor = parse_numeric(nums[1]);
    auto patch = parse_numeric(nums[2]);
    if (!major || !minor || !patch) {
        return std::nullopt;
    }
    v.major = *major;
    v.minor = *minor;
    v.patch = *patch;
    return v;
}

}  // namespace crate2bib
