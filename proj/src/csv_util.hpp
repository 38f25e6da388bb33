#pragma once

// Internal CSV helpers shared by the file loaders. Not installed.

#include <cmath>
#include <string>
#include <vector>

#include "physnet/errors.hpp"

namespace physnet::csv {

inline std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(field);
            field.clear();
        } else if (ch != '\r') {
            field += ch;
        }
    }
    fields.push_back(field);
    return fields;
}

inline double parse_double(const std::string& s, const std::string& path, long line,
                           const std::string& what, bool allow_nan = false) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size() || (!allow_nan && !std::isfinite(v)))
            throw ParseError(path, line, "invalid " + what + " '" + s + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError(path, line, "invalid " + what + " '" + s + "'");
    }
}

inline long long parse_integer(const std::string& s, const std::string& path, long line,
                               const std::string& what) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw ParseError(path, line, "invalid " + what + " '" + s + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError(path, line, "invalid " + what + " '" + s + "'");
    }
}

inline int parse_int(const std::string& s, const std::string& path, long line,
                     const std::string& what) {
    const long long v = parse_integer(s, path, line, what);
    if (v < -2147483648LL || v > 2147483647LL)
        throw ParseError(path, line, what + " out of range '" + s + "'");
    return static_cast<int>(v);
}

inline unsigned long long parse_uint64(const std::string& s, const std::string& path, long line,
                                       const std::string& what) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size() || s.empty() || s[0] == '-')
            throw ParseError(path, line, "invalid " + what + " '" + s + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError(path, line, "invalid " + what + " '" + s + "'");
    }
}

}  // namespace physnet::csv
