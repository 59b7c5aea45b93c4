#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "proxflow/intersection.hpp"
#include "proxflow/state.hpp"

namespace proxflow {

// Right-hand side of the unconstrained dynamics.
struct VectorField {
  std::function<StateVector(const StateVector&)> eval;
  std::optional<double> lipschitz_hint;
  std::optional<double> bound_hint;
};

// Scheme selectors. PBD truncates the projection after a single sweep;
// the iterative schemes carry their stopping tolerances; the penalty scheme
// replaces projection by a restoring force of strength gamma.
struct PBD {};
struct MoreauEuler {
  double abstol;
  double reltol;
};
struct PNGS {
  double abstol;
  double reltol;
};
struct PGS {
  double abstol;
  double reltol;
};
struct Penalty {
  double gamma;
};

using SchemeSpec = std::variant<PBD, MoreauEuler, PNGS, PGS, Penalty>;

// throws ContractViolation unless tolerances/gamma are positive
void validate_scheme(const SchemeSpec& s);

// stable identifier used in CSV output and logs, e.g. "pbd", "penalty(gamma=10)"
std::string scheme_label(const SchemeSpec& s);

struct StepResult {
  StateVector x;
  std::size_t work;  // constraint treatments: one per distance evaluation / projection
};

// drift x + h f(x), then exactly one projection sweep; work = m
StepResult step_pbd(const ConstraintSystem& sys, const VectorField& f, double h,
                    const StateVector& x);

// drift, then the full projection via the sweep oracle; work = m * passes
StepResult step_moreau(const ConstraintSystem& sys, const VectorField& f, double h,
                       const StateVector& x, double abstol, double reltol);

// drift, then repeated sweeps until the pass displacement meets
// abstol + ||y||*reltol; numerically the same oracle as step_moreau
StepResult step_pngs(const ConstraintSystem& sys, const VectorField& f, double h,
                     const StateVector& x, double abstol, double reltol);

// drift, then repeated sweeps over half-space linearizations of the violated
// constraints, normals frozen at the drift point; same stopping criterion
StepResult step_pgs(const ConstraintSystem& sys, const VectorField& f, double h,
                    const StateVector& x, double abstol, double reltol);

// explicit Euler on f minus a restoring force gamma * d_j * grad d_j per
// violated constraint; work = m
StepResult step_penalty(const ConstraintSystem& sys, const VectorField& f, double h,
                        const StateVector& x, double gamma);

// dispatch on the scheme selector
StepResult step(const SchemeSpec& scheme, const ConstraintSystem& sys, const VectorField& f,
                double h, const StateVector& x);

// Fixed-step piecewise-linear trajectory: times[k] = k*h with h = T/n.
struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<std::size_t> work;  // per step, |work| = |states| - 1
  SchemeSpec scheme;

  double h() const { return times.size() > 1 ? times[1] : 0.0; }
  double duration() const { return times.empty() ? 0.0 : times.back(); }
};

// n steps of the scheme from a feasible x0 (d_S(x0) <= 1e-10 checked against
// the projection oracle). Step failures rethrow as IntegrationError with the
// step index attached. Non-finite states are recorded, not thrown: divergence
// is classified by the caller.
Trajectory integrate(const SchemeSpec& scheme, const ConstraintSystem& sys, const VectorField& f,
                     const StateVector& x0, double T, std::size_t n);

// piecewise-linear interpolant; exact at nodes; t must lie in [0, duration]
StateVector interpolate(const Trajectory& traj, double t);

}  // namespace proxflow
