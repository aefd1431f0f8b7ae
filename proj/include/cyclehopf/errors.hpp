#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cyclehopf {

// Malformed input. Line 0 means the error is not tied to a line (e.g. the
// file could not be opened).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A configured size cap or enumeration budget was exceeded.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exact identity that must hold did not. Always an implementation bug.
class IdentityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cyclehopf
