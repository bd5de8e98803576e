#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace crate2bib {

using Timestamp = std::chrono::sys_seconds;

/// Parses RFC 3339 timestamps as returned by the registry, e.g.
/// `2025-01-05T12:00:00.123456+00:00` or `2025-01-05T12:00:00Z`.
/// Fractional seconds are truncated.
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// `YYYY-MM-DDTHH:MM:SSZ`
std::string format_timestamp(Timestamp ts);

/// Strict `YYYY-MM-DD` with calendar validation.
std::optional<std::chrono::year_month_day> parse_date(std::string_view text);

std::string format_date(std::chrono::year_month_day date);

Timestamp now_seconds();

}  // namespace crate2bib
