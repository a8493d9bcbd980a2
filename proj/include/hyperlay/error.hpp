#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyperlay {

// Base for every error the engine reports. Callers that only need a message
// can catch this; the CLI maps it to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input syntax. line/column are 1-based, byte is a 0-based offset.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column, std::size_t byte)
        : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line), column_(column), byte_(byte) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    std::size_t byte() const noexcept { return byte_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::size_t byte_;
};

// A hyperedge names an author index that does not exist.
class ReferenceError : public Error {
public:
    using Error::Error;
};

// Input is syntactically fine but violates a structural invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace hyperlay
