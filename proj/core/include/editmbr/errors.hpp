#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace editmbr {

// Base for every error caused by the data being processed (as opposed to how
// the tool was invoked). The CLI maps these to exit status 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An edit or edit set violates its structural invariants.
class ValidationError : public DataError {
 public:
  using DataError::DataError;
};

// Malformed input text. `line()` is 1-based, 0 when unknown.
class ParseError : public DataError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : DataError(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace editmbr
