#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace rbmtail {

inline constexpr std::string_view kVersion = "0.1.0";

/// Shortest decimal form that round-trips; "nan"/"inf" for non-finite values.
std::string format_double(double v);

/// Parses one decimal number per line. Empty lines (other than a trailing
/// newline), surrounding whitespace, infinities and NaNs are rejected with a
/// ParseError naming the line.
std::vector<double> parse_numbers(std::string_view text);

/// Reads a file and parses it with parse_numbers; a missing or unreadable file
/// is a ParseError on line 0.
std::vector<double> read_numbers(const std::filesystem::path& path);

}  // namespace rbmtail
