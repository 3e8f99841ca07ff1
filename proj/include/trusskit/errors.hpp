// errors.hpp - error types shared across the library

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trusskit {

// Malformed complex input; line is 1-based.
struct ParseError : std::runtime_error {
  ParseError(std::size_t line_no, const std::string& what_arg)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + what_arg),
        line(line_no) {}
  std::size_t line;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Memory budget cannot be honored (a candidate group that must be resident
// exceeds it).
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace trusskit
