#pragma once

#include <stdexcept>
#include <string>

namespace defprior {

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input data does not satisfy the preconditions of a fit or analysis.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to reach its contractual accuracy.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, std::string diagnostics)
      : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}

  const std::string& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::string diagnostics_;
};

}  // namespace defprior
