#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tireval {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input line; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  // Wraps an existing parse error with a context prefix (e.g. a file path).
  ParseError(const std::string& prefix, const ParseError& inner)
      : Error(prefix + inner.what()), line_(inner.line()) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Structurally well-formed input that violates an invariant
// (duplicate ids, missing topics, empty qrels, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An operation produced no result (empty core-topic intersection, ...).
class EmptyResultError : public Error {
 public:
  using Error::Error;
};

}  // namespace tireval
