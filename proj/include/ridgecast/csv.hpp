#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ridgecast {

/// Shortest round-trip decimal form of x, with ".0" appended to integral
/// values so floating-point columns always look floating-point. Output is
/// deterministic, which the byte-identical re-run guarantees rely on.
std::string format_double(double x);

/// Splits one CSV line on commas. No quoting rules; trailing '\r' and
/// surrounding whitespace are trimmed from each cell.
std::vector<std::string> split_csv_line(const std::string& line);

/// Parses a cell as a decimal literal. Empty or unparseable cells yield
/// nullopt (they are treated as missing upstream).
std::optional<double> parse_cell(const std::string& cell);

/// Reads all lines of a text file, dropping a trailing empty line.
std::vector<std::string> read_lines(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

} // namespace ridgecast
