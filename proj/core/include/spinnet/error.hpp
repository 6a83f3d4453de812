#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spinnet {

// Base of every error raised by the library. The CLI maps these to
// structured error reports with exit status 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed graph, coloring, assignment or point text.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A well-formed request that violates a precondition of the operation
// (wrong valence, disconnected graph, inadmissible color, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An internal numeric or consistency check failed. Seeing one of these
// means a bug or a floating point fault, never bad user input.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace spinnet
