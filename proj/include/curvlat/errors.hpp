#pragma once

#include <stdexcept>
#include <string>

namespace curvlat {

// Violated precondition on an operation's input (bad shape, non-positive
// metric, unresolvable packet, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Iterative method failed to reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::string operation, double residual, int iterations)
      : std::runtime_error(operation + ": no convergence after " +
                           std::to_string(iterations) +
                           " iterations (residual " + std::to_string(residual) +
                           ")"),
        operation_(std::move(operation)),
        residual_(residual),
        iterations_(iterations) {}

  const std::string& operation() const { return operation_; }
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  std::string operation_;
  double residual_;
  int iterations_;
};

// Malformed scenario/config input. `key_path` names the offending entry,
// e.g. "scenario.a" or "grid.boundary".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key_path, const std::string& message)
      : std::runtime_error(key_path + ": " + message),
        key_path_(std::move(key_path)) {}

  const std::string& key_path() const { return key_path_; }

 private:
  std::string key_path_;
};

}  // namespace curvlat
