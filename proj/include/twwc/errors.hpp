#pragma once

#include <stdexcept>
#include <string>

namespace twwc {

// Invalid user input: malformed laws, dimension mismatches, bad parameters.
// The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A request that exceeds an enumeration/storage budget. Exit code 3.
class SizingError : public std::runtime_error {
 public:
  explicit SizingError(const std::string& what) : std::runtime_error(what) {}
};

// Iterative minimization failed to certify its tolerance; carries the best
// value found and the residual certificate so callers can decide.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_value, double residual)
      : std::runtime_error(what), best_value(best_value), residual(residual) {}
  double best_value;
  double residual;
};

}  // namespace twwc
