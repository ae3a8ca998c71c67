#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qbc {

// Shapes or layouts that do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A desk-scale cap (dimension, Kraus count, blocklength) would be exceeded.
class CapacityExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A matrix that must be Hermitian / PSD / unit trace is not.
class InvalidState : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Kraus set that fails completeness, or malformed channel parameters.
class InvalidChannel : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed channel document. line == 0 when the error is structural rather
// than lexical.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace qbc
