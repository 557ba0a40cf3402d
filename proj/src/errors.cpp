#include "convexrelax/errors.hpp"

#include <utility>

namespace convexrelax {

IterationBudgetExhausted::IterationBudgetExhausted(const std::string& what,
                                                   Eigen::VectorXd last_iterate,
                                                   double residual, int iterations)
    : DomainError(what + " (iterations=" + std::to_string(iterations) +
                  ", residual=" + std::to_string(residual) + ")"),
      last_iterate_(std::move(last_iterate)),
      residual_(residual),
      iterations_(iterations) {}

}  // namespace convexrelax
