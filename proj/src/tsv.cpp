#include "docq/tsv.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

#include "docq/error.hpp"

namespace docq::tsv {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return fields;
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& field) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const double value = field.empty() ? 0.0 : std::strtod(begin, &end);
    if (field.empty() || end != begin + field.size())
        throw Error("not a number: '" + field + "'");
    return value;
}

std::uint64_t parse_uint(const std::string& field) {
    std::uint64_t value = 0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || res.ec != std::errc{} || res.ptr != field.data() + field.size())
        throw Error("not a non-negative integer: '" + field + "'");
    return value;
}

}  // namespace docq::tsv
