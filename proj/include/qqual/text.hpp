#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qqual::text {

// Decodes UTF-8 into code points. Invalid bytes decode as U+FFFD one byte at a time.
std::vector<char32_t> decode_utf8(std::string_view s);
void append_utf8(std::string& out, char32_t cp);

std::string to_lower_ascii(std::string_view s);
std::string trim(std::string_view s);
// Collapses every run of whitespace to one space and trims the ends.
std::string collapse_whitespace(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

// Lowercased maximal runs of ASCII letters and digits. Everything else separates.
std::vector<std::string> alnum_tokens(std::string_view s);

// Shortest round-trip decimal form; used for every number written to disk.
std::string format_double(double v);
double parse_double(std::string_view s);
std::int64_t parse_int(std::string_view s);
std::optional<double> parse_optional_double(std::string_view s);

}  // namespace qqual::text
