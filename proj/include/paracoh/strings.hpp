#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace paracoh {

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
bool is_blank(std::string_view s);

// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);
// Strict parse: the whole string must be a finite number.
bool parse_double(std::string_view s, double& out);

// Read a list file: one entry per line, blank lines and lines starting with
// '#' ignored, surrounding whitespace trimmed.
std::vector<std::string> read_word_list(const std::string& path);

}  // namespace paracoh
