#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ctrlplace {

/// Shortest round-trip decimal form of a double ("40", "0.5", "1e+300").
/// Locale-independent, used for every number written to CSV output.
std::string format_number(double value);

/// Full-cell numeric parse; rejects trailing garbage. Locale-independent.
std::optional<double> parse_number(std::string_view cell);

/// Splits a CSV line on commas and trims spaces, tabs and trailing CR from
/// each cell. No quoting rules: labels must not contain commas.
std::vector<std::string> split_csv_line(std::string_view line);

/// Splits text into lines, accepting LF and CRLF and dropping a UTF-8 BOM.
std::vector<std::string> split_lines(std::string_view text);

} // namespace ctrlplace
