#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mmlogic {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed formula or theory text. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

/// A request that does not fit the structure it targets: unknown world,
/// relation index out of range, malformed structure file.
class ModelError : public Error {
public:
    using Error::Error;
};

}  // namespace mmlogic
