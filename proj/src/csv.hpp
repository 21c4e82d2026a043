#pragma once

// Small shared CSV helpers: strict locale-independent number formatting and
// parsing, line splitting, '#'-prefixed metadata lines used by the stage
// artifact files.

#include <charconv>
#include <cstdio>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace semacc::csv {

inline std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

inline void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

/// Shortest decimal form that round-trips to the same double.
inline std::string format_double(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

inline bool parse_double(std::string_view text, double& out) {
    const char* first = text.data();
    const char* last = first + text.size();
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last;
}

inline bool parse_long(std::string_view text, long& out) {
    const char* first = text.data();
    const char* last = first + text.size();
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last;
}

/// Parses a leading block of "# key value" lines. Consumption stops at the
/// first line that does not start with '#'.
struct Metadata {
    std::map<std::string, std::string> entries;

    const std::string* find(const std::string& key) const {
        auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    }
};

inline bool parse_metadata_line(const std::string& line, Metadata& meta) {
    if (line.empty() || line[0] != '#') return false;
    std::size_t key_start = line.find_first_not_of("# ", 0);
    if (key_start == std::string::npos) return true;
    std::size_t key_end = line.find(' ', key_start);
    if (key_end == std::string::npos) {
        meta.entries[line.substr(key_start)] = "";
    } else {
        std::size_t value_start = line.find_first_not_of(' ', key_end);
        meta.entries[line.substr(key_start, key_end - key_start)] =
            value_start == std::string::npos ? "" : line.substr(value_start);
    }
    return true;
}

}  // namespace semacc::csv
