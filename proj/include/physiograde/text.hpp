#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace physio {

/// Shortest representation that parses back to the same double (locale-free).
std::string fmt_double(double value);

/// Fixed-point rendering with the given number of fraction digits.
std::string fmt_fixed(double value, int precision);

/// Whole-token numeric parse; rejects trailing garbage and empty input.
std::optional<double> parse_double(std::string_view text);

/// Splits on '\n', stripping a trailing '\r' from each line. The final
/// newline does not produce an extra empty line.
std::vector<std::string_view> split_lines(std::string_view text);

std::vector<std::string_view> split(std::string_view text, char sep);

std::string_view trim(std::string_view text);

std::string to_lower(std::string_view text);

bool iequals(std::string_view a, std::string_view b);

} // namespace physio
