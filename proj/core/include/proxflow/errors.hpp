#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace proxflow {

// precondition or dimension violation on the caller's side
struct ContractViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// projection input equidistant from more than one nearest point
struct AmbiguousProjection : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// proximal normal requested at a feasible point
struct ZeroNormal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// calmness ratio requested at a feasible point
struct FeasibleInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// iterative projection did not meet its stopping criterion
struct NoConvergence : std::runtime_error {
  std::vector<double> last_iterate;
  double residual;
  NoConvergence(const std::string& msg, std::vector<double> iterate, double res)
      : std::runtime_error(msg), last_iterate(std::move(iterate)), residual(res) {}
};

// a scheme step failed during integration
struct IntegrationError : std::runtime_error {
  std::size_t step_index;
  IntegrationError(const std::string& msg, std::size_t step)
      : std::runtime_error(msg + " (at step " + std::to_string(step) + ")"), step_index(step) {}
};

}  // namespace proxflow
