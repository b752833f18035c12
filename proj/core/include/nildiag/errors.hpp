#pragma once

#include <stdexcept>
#include <string>

namespace nildiag {

/// A caller violated a documented precondition (bad modulus, singular matrix,
/// field/mode mismatch, ...). The CLI maps this to exit status 2.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An internal post-check failed. This is always a bug in a construction,
/// never a user error; the CLI maps it to exit status 3.
class ConstructionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed text input. Line and column are 1-based; column 0 means the
/// whole line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace nildiag
