#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lexcausal {

/// Splits one CSV line on commas; double-quoted fields may contain commas
/// and "" escapes.
std::vector<std::string> split_csv_line(std::string_view line);

/// Quotes a field if it contains a comma, quote or newline.
std::string csv_escape(std::string_view field);

/// Shortest representation that round-trips through strtod.
std::string format_double(double value);

/// Fixed-point with `digits` decimals.
std::string format_fixed(double value, int digits);

std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_integer(std::string_view text);

std::string_view trim(std::string_view text) noexcept;

}  // namespace lexcausal
