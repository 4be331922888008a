#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prosodex {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Document text is empty after preprocessing.
class EmptyDocument : public Error {
 public:
  using Error::Error;
};

/// Input outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Numerical fit failed (degenerate sample or no convergence).
class FitError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameters, options or configuration values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Classifier cannot be trained on the supplied data.
class TrainError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. `line()` is 1-based; 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace prosodex
