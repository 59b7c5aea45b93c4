#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "proxflow/geometry.hpp"
#include "proxflow/state.hpp"

namespace proxflow {

// Intersection S of elementary sets, traversed in stored order.
// The order matters: Gauss-Seidel sweeps are sequential.
struct ConstraintSystem {
  std::vector<ConstraintDescriptor> constraints;
  std::size_t state_dim = 0;
  double prox_radius_hint = 0.0;  // min over the constraints' prox radii

  std::size_t size() const { return constraints.size(); }
};

// Validates every constraint, derives state_dim (or checks the given one),
// and computes prox_radius_hint. Throws ContractViolation on inconsistency.
ConstraintSystem make_system(std::vector<ConstraintDescriptor> constraints,
                             std::size_t state_dim = 0);

// Record of one Gauss-Seidel pass: iterates q_0..q_m, increments
// v_j = q_j - q_{j-1} (stored so the identity holds exactly), and how far
// each constraint moved the iterate (its point-set distance before the
// projection). Degeneracy perturbations are logged in warnings.
struct SweepTrace {
  std::vector<StateVector> q;
  std::vector<StateVector> v;
  std::vector<double> per_constraint_distances;
  std::vector<std::string> warnings;
};

// One pass of sequential projections in stored order; returns the final
// iterate q_m together with the full trace. Coincident-block degeneracies
// are resolved by a deterministic 1e-9 perturbation of the first affected
// coordinate, recorded in trace.warnings.
std::pair<StateVector, SweepTrace> sweep(const ConstraintSystem& sys, const StateVector& q0);

// Trace-free sweep for hot loops; same projection order and degeneracy handling.
void sweep_inplace(const ConstraintSystem& sys, StateVector& q);

struct ProjectionResult {
  StateVector point;
  std::size_t sweeps;  // passes performed, certifying pass included
};

constexpr std::size_t kDefaultMaxSweeps = 100000;

// Repeats sweeps until the pass displacement satisfies
// ||sweep(y) - y|| <= abstol + ||y||*reltol, then returns the iterate that met
// the criterion. Serves as the projection oracle onto the intersection.
// Throws NoConvergence (with last iterate and residual) past max_sweeps.
ProjectionResult project_exact_info(const ConstraintSystem& sys, const StateVector& q0,
                                    double abstol, double reltol,
                                    std::size_t max_sweeps = kDefaultMaxSweeps);

StateVector project_exact(const ConstraintSystem& sys, const StateVector& q0, double abstol,
                          double reltol, std::size_t max_sweeps = kDefaultMaxSweeps);

struct OracleTols {
  double abstol = 1e-12;
  double reltol = 1e-12;
  std::size_t max_sweeps = kDefaultMaxSweeps;
};

// max_j d_{S_j}(x), the largest single-constraint violation
double max_constraint_distance(const ConstraintSystem& sys, const StateVector& x);

// max_j d_{S_j}(x) / d_S(x) with d_S measured against the projection oracle.
// Throws FeasibleInput when x is feasible (ratio undefined).
double calmness_ratio(const ConstraintSystem& sys, const StateVector& x, const OracleTols& tols);

// Cluster cover of points: centers Q with
//   union of B_R(X_k)  contained in  union of B_{2^L R}(Q_i)
// and the doubled balls B_{2^{L+1} R}(Q_i) pairwise disjoint.
struct ClusterCover {
  std::vector<StateVector> centers;
  unsigned L = 0;
  std::size_t m = 0;  // number of centers
};

// Iterative midpoint merging; L grows by 2 per merge, so L <= 2(n-1).
ClusterCover cluster_covers(const std::vector<StateVector>& positions, double R);

// Constructs a feasible disk configuration (all pairwise center distances
// >= 2R) near x. Branches on the largest pairwise overlap D:
//   D >  R: sequential shift, total movement <= 2R*n(n-1)/2;
//   D <= R: cluster-and-scale with factor 2R/(2R-D), ||x-y|| <= n*4^{n-1}*D.
// Feasible input is returned unchanged.
StateVector feasible_point_disks(const StateVector& x, std::size_t n, std::size_t dim, double R);

}  // namespace proxflow
