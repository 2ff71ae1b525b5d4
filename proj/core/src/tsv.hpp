#pragma once

// Internal helpers for the tab-separated input formats.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "generank/errors.hpp"

namespace generank::detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        fields.push_back(trim(line.substr(start, tab == std::string_view::npos ? tab : tab - start)));
        if (tab == std::string_view::npos) break;
        start = tab + 1;
    }
    return fields;
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

/// Calls fn(line_number, fields) for every non-blank, non-comment line.
template <typename Fn>
void for_each_tsv_line(std::istream &in, Fn &&fn, char separator = '\t') {
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        fn(number, separator == ',' ? split_commas(line) : split_tabs(line));
    }
}

inline std::string at_line(std::size_t line) {
    return line == 0 ? std::string() : " (line " + std::to_string(line) + ")";
}

inline double parse_double(std::string_view text, std::size_t line, const char *what) {
    // std::from_chars for double is available in libstdc++ 11.
    double value = 0.0;
    const auto *end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty())
        throw InputError("cannot parse " + std::string(what) + " '" + std::string(text) + "'" + at_line(line));
    return value;
}

inline std::uint64_t parse_uint(std::string_view text, std::size_t line, const char *what) {
    std::uint64_t value = 0;
    const auto *end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty())
        throw InputError("cannot parse " + std::string(what) + " '" + std::string(text) + "'" + at_line(line));
    return value;
}

} // namespace generank::detail
