#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace refaudit {

// Base class for every error raised by the library. The CLI maps these to
// exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input that does not conform to the corpus schema. `line` is 1-based, 0 when
// the problem is not tied to a single input line.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& message, std::size_t line = 0)
      : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// An event names a paper (or an editor assignment) that does not exist.
class ReferentialError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A function was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Bad user configuration (generator config, CLI options, feature setup).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace refaudit
