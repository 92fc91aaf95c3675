#pragma once

#include <stdexcept>
#include <string>

namespace qstab {

/// Input outside the supported size range (e.g. enumeration past n = 10).
class BoundsError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Malformed or mutually inconsistent arguments.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The operation is not defined for this input (e.g. core of a genus-2 curve).
class UnsupportedError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A proven combinatorial statement failed on a concrete input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Text or JSON input that does not follow the documented grammar.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error(format(what, line, column)), line_(line), column_(column) {}
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(const std::string& what, int line, int column) {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }

  int line_ = 0;
  int column_ = 0;
};

}  // namespace qstab
