#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace convexrelax {

/// Base class for failures that stem from the mathematical problem rather than
/// from how the caller spelled it (infeasible anchors, inapplicable bounds,
/// solver budgets). The CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver stopped before meeting its tolerance. Carries the last
/// iterate so callers can inspect or accept it.
class IterationBudgetExhausted : public DomainError {
 public:
  IterationBudgetExhausted(const std::string& what, Eigen::VectorXd last_iterate,
                           double residual, int iterations);

  const Eigen::VectorXd& last_iterate() const noexcept { return last_iterate_; }
  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  Eigen::VectorXd last_iterate_;
  double residual_;
  int iterations_;
};

class InfeasibleAnchor : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A closed-form bound was evaluated outside the range where it is proved.
class BoundInapplicable : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Enumeration of a signal set would exceed the caller's limit.
class SetTooLarge : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Sample-complexity search hit its sample cap without reaching the target.
class TargetUnreachable : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed configuration or input files. The CLI maps these to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace convexrelax
