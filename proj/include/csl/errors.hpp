#pragma once

#include <stdexcept>
#include <string>

namespace csl {

/// Bad user input: malformed values, carrier mismatches, parse failures.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Syntax error with a character position into the offending text.
class parse_error : public input_error {
 public:
  parse_error(const std::string& msg, std::size_t pos)
      : input_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
  std::size_t position;
};

/// Broken internal invariant: canonicity or certificate replay failure.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace csl
