#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ionforge {

// Base class for everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid physical input (non-positive mass, negative spacing, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A documented physics precondition was violated at call time
// (phonon bus not in the ground state, positions not at equilibrium, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Population reached the phonon truncation boundary.
class TruncationError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Iterative solver ran out of iterations; carries the final residuals.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> residuals)
      : Error(what), residuals_(std::move(residuals)) {}
  const std::vector<double>& residuals() const { return residuals_; }

 private:
  std::vector<double> residuals_;
};

// Config text rejected; carries the offending line and/or key.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what, int line = 0,
                       std::string key = {})
      : Error(what), line_(line), key_(std::move(key)) {}
  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_ = 0;
  std::string key_;
};

}  // namespace ionforge
