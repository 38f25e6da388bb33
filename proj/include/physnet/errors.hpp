#pragma once

#include <stdexcept>
#include <string>

namespace physnet {

/// Invalid parameters, ranges, or inconsistent inputs.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem problems: missing files, unwritable paths.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed file content; carries the 1-based line number.
class ParseError : public IoError {
public:
    ParseError(const std::string& path, long line, const std::string& what)
        : IoError(path + ":" + std::to_string(line) + ": " + what), line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

/// The pressure system has no solution (current-carrying nodes not connected).
class SingularSystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace physnet
