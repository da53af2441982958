#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace socialpoll {

/// Malformed or inconsistent input (bad instance, bad order, violated precondition).
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A configured resource guard (orientation count, table size) was exceeded.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The requested solver mode does not support this instance (e.g. weights).
class UnsupportedError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Syntax or semantic error while reading a text document, with location.
class ParseError : public InputError {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace socialpoll
