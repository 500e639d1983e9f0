#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace awci {

/// Malformed textual input. Carries a 1-based line/column when known.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& message, std::size_t line = 0,
              std::size_t column = 0);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Structurally invalid value (empty position set, break out of range, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation not defined for the given arguments (e.g. two intervals on
/// the same string).
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A configurable work or size guard was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace awci
