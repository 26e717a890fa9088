#pragma once

#include <stdexcept>
#include <string>

namespace kinfront {

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative method (bisection, golden section, quadrature) did not converge.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A time-stepping run detected a broken invariant: CFL violation, NaN,
/// domain too small, or a bound that the model guarantees.
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kinfront
