#include "proxflow/intersection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace proxflow {

namespace {

constexpr double kDegeneracyNudge = 1e-9;

// first state index the constraint acts on, for the degeneracy perturbation
std::size_t perturb_index(const ConstraintDescriptor& c) {
  if (const auto* p = std::get_if<PairwiseDistance>(&c)) return p->i * p->dim;
  return 0;
}

// Projects q onto constraint j, resolving a coincident-block degeneracy by a
// deterministic nudge. Returns the warning text, empty when none was needed.
std::string project_resolving(const ConstraintDescriptor& c, std::size_t j, StateVector& q) {
  try {
    project_inplace(c, q);
    return {};
  } catch (const AmbiguousProjection&) {
    std::size_t k = perturb_index(c);
    q[k] += kDegeneracyNudge;
    project_inplace(c, q);
    return "constraint " + std::to_string(j) + ": coincident blocks, perturbed coordinate " +
           std::to_string(k) + " by 1e-9";
  }
}

}  // namespace

ConstraintSystem make_system(std::vector<ConstraintDescriptor> constraints,
                             std::size_t state_dim) {
  if (constraints.empty()) throw ContractViolation("constraint system must be non-empty");
  std::size_t pinned = 0;
  std::size_t needed = 0;
  double hint = std::numeric_limits<double>::infinity();
  for (const auto& c : constraints) {
    validate(c);
    needed = std::max(needed, min_state_dim(c));
    hint = std::min(hint, prox_radius(c));
    if (pins_state_dim(c)) {
      std::size_t d = min_state_dim(c);
      if (pinned != 0 && pinned != d)
        throw ContractViolation("constraints disagree on the state dimension");
      pinned = d;
    }
  }
  std::size_t dim = state_dim != 0 ? state_dim : (pinned != 0 ? pinned : needed);
  if (pinned != 0 && dim != pinned)
    throw ContractViolation("requested state dimension conflicts with a constraint");
  if (dim < needed)
    throw ContractViolation("state dimension too small for the widest constraint");
  return ConstraintSystem{std::move(constraints), dim, hint};
}

std::pair<StateVector, SweepTrace> sweep(const ConstraintSystem& sys, const StateVector& q0) {
  SweepTrace trace;
  std::size_t m = sys.constraints.size();
  trace.q.reserve(m + 1);
  trace.v.reserve(m);
  trace.per_constraint_distances.reserve(m);
  trace.q.push_back(q0);
  StateVector cur = q0;
  for (std::size_t j = 0; j < m; ++j) {
    std::string warning = project_resolving(sys.constraints[j], j, cur);
    if (!warning.empty()) trace.warnings.push_back(std::move(warning));
    trace.v.push_back(sub(cur, trace.q.back()));
    trace.per_constraint_distances.push_back(norm(trace.v.back()));
    trace.q.push_back(cur);
  }
  return {std::move(cur), std::move(trace)};
}

void sweep_inplace(const ConstraintSystem& sys, StateVector& q) {
  for (std::size_t j = 0; j < sys.constraints.size(); ++j)
    project_resolving(sys.constraints[j], j, q);
}

ProjectionResult project_exact_info(const ConstraintSystem& sys, const StateVector& q0,
                                    double abstol, double reltol, std::size_t max_sweeps) {
  if (!(abstol > 0.0) || !(reltol > 0.0))
    throw ContractViolation("projection tolerances must be positive");
  StateVector y = q0;
  StateVector next;
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t s = 1; s <= max_sweeps; ++s) {
    next = y;
    sweep_inplace(sys, next);
    residual = diff_norm(next, y);
    if (residual <= abstol + norm(y) * reltol) return {std::move(y), s};
    y.swap(next);
  }
  throw NoConvergence("projection sweeps did not meet the stopping criterion within " +
                          std::to_string(max_sweeps) + " passes",
                      std::move(y), residual);
}

StateVector project_exact(const ConstraintSystem& sys, const StateVector& q0, double abstol,
                          double reltol, std::size_t max_sweeps) {
  return project_exact_info(sys, q0, abstol, reltol, max_sweeps).point;
}

double max_constraint_distance(const ConstraintSystem& sys, const StateVector& x) {
  double dmax = 0.0;
  for (const auto& c : sys.constraints) dmax = std::max(dmax, distance(c, x));
  return dmax;
}

double calmness_ratio(const ConstraintSystem& sys, const StateVector& x, const OracleTols& tols) {
  double dmax = max_constraint_distance(sys, x);
  if (dmax == 0.0) throw FeasibleInput("calmness ratio requested at a feasible point");
  StateVector p = project_exact(sys, x, tols.abstol, tols.reltol, tols.max_sweeps);
  double ds = diff_norm(x, p);
  if (ds == 0.0) throw FeasibleInput("calmness ratio undefined: projection did not move");
  return dmax / ds;
}

}  // namespace proxflow
