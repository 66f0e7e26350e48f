#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace folab {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An exponential operation was refused because its work estimate exceeds
/// the documented cap. Distinct from a mathematical answer: the result is
/// "undecided at cap".
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// Malformed textual input. `position` is a byte offset for graph6 and a
/// 1-based column for formulas (with `line`).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          line_(line), column_(column) {}

    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at byte offset " + std::to_string(offset)), line_(0), column_(offset) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    std::size_t offset() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace folab
