#pragma once

#include <stdexcept>
#include <string>

namespace pgrad {

// Input text could not be parsed. Carries the 1-based line/column of the
// offending token.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return col_; }

private:
  int line_;
  int col_;
};

// A documented precondition was violated by the caller (alphabet mismatch,
// word outside the subgroup, non-invariant functional, ...).
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A resource bound was reached before the computation could certify its
// answer (coset enumeration did not close, node budget exhausted, ...).
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// An internal invariant failed. Always a bug, never a property of the input.
class IntegrityError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace pgrad
