#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace docq::tsv {

std::vector<std::string> split(const std::string& line);

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);

/// Whole-field numeric parses; anything else throws Error (callers attach
/// file and line context).
double parse_double(const std::string& field);
std::uint64_t parse_uint(const std::string& field);

}  // namespace docq::tsv
