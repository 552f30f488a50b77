#pragma once

#include <stdexcept>
#include <string>

namespace fracdiff {

// Argument outside the documented domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Pivot below the singularity threshold during a Hessenberg factorization.
class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite values produced while time stepping.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or invalid run configuration. `field` names the offending key
// when known; `line` is 1-based, 0 when not applicable.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, std::string field = {}, int line = 0)
      : std::runtime_error(message), field_(std::move(field)), line_(line) {}

  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  std::string field_;
  int line_;
};

}  // namespace fracdiff
