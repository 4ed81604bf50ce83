#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lstlp {

/// Argument outside the mathematical domain of an operation (non-positive
/// price, share outside (0,1), c = 0, negative radicand, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Model parameters that violate the field or token-kind invariants.
class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One or more standing model assumptions do not hold. Carries the
/// identifiers reported by check_exit_assumptions (or "staking_incentive").
class AssumptionViolation : public std::domain_error {
 public:
  explicit AssumptionViolation(std::vector<std::string> conditions);

  const std::vector<std::string>& conditions() const noexcept { return conditions_; }

 private:
  std::vector<std::string> conditions_;
};

/// The optimizer or a simulation produced a result that contradicts a
/// structural property it must satisfy.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lstlp
