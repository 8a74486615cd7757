#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mlsparse {

// Bad caller input: malformed values, violated preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Text parse failure; carries the 1-based line number when known.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// An exact computation refused to run because the instance exceeds its size
// guard.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A post-condition check failed. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mlsparse
