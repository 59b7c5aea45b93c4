#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <variant>

#include "proxflow/intersection.hpp"
#include "proxflow/solvers.hpp"
#include "proxflow/state.hpp"

namespace proxflow {

// A point sliding under constant downward force along the rim where d-1
// spheres of radius sqrt(1+C^2) meet; closed-form solution available.
struct SlidingProblem {
  std::size_t d = 3;
  double C = 10.0;
  double alpha = 0.19634954084936207;  // pi/16
};

// N disks of radius R in the plane, drawn toward the origin with strength
// gamma, kept from overlapping by pairwise constraints.
struct DisksProblem {
  std::size_t N = 40;
  double R = 0.1;
  double gamma = 1.0;
  std::uint64_t seed = 1;
  StateVector x0;  // 2N coordinates, pairwise feasible
};

using ProblemSpec = std::variant<SlidingProblem, DisksProblem>;

// Closed-form solution constants for the sliding problem.
// C1 < 0 for angles in (0, pi/2); the slide leaves the rim at t_exit = -C1.
struct SlidingConstants {
  double C1;
  double C2;
  double t_exit;
};

// requires alpha in (0, pi/2) so the sliding phase exists
SlidingConstants sliding_constants(double alpha);

// The d-1 sphere-exterior constraints plus the on-rim initial state
// sin(alpha) e1 + cos(alpha) e2. Requires d >= 3, C > 0, alpha in (0, pi).
// Angles at or beyond pi/2 start in immediate free fall (no sliding phase).
std::pair<ConstraintSystem, StateVector> sliding_system(std::size_t d, double C, double alpha);

// constant downward force -e2
VectorField sliding_force(std::size_t d);

// Closed-form trajectory: on-rim slide for t <= t_exit, straight fall after.
// Coordinates 3..d are zero. Requires t >= 0.
StateVector sliding_exact(const SlidingConstants& consts, std::size_t d, double t);

// Exact solution over the full angle domain (0, pi): rim slide followed by
// free fall when alpha < pi/2, immediate free fall from x0 otherwise.
std::function<StateVector(double)> sliding_truth(const SlidingProblem& p);

// Seeded rejection sampling of N non-overlapping disks in a box with side
// 4R*sqrt(N). Throws after 10^6 attempts with a suggestion to enlarge the box.
DisksProblem disks_system(std::size_t N, double R, std::uint64_t seed);

// the N(N-1)/2 pairwise constraints in lexicographic (i,j) order
ConstraintSystem disks_constraints(const DisksProblem& p);

// central attraction -gamma * x
VectorField disks_force(double gamma);

// High-accuracy ground truth: the iterative-sweep scheme at
// abstol 1e-12 / reltol 1e-10. Requires h_ref = T/n_ref <= 1e-4 * T.
Trajectory reference_trajectory(const DisksProblem& p, double T, std::size_t n_ref);

// constraint system + initial state + force field for either problem
struct BuiltProblem {
  ConstraintSystem system;
  StateVector x0;
  VectorField force;
};
BuiltProblem build_problem(const ProblemSpec& p);

// JSON document with fields exactly: kind, d/N, C/R, alpha/gamma, seed, x0.
std::string problem_to_json(const ProblemSpec& p);

// Parses the document above. For disk problems the stored x0 is authoritative
// (re-validated, not re-sampled); a missing x0 is regenerated from the seed.
ProblemSpec problem_from_json(const std::string& text);

}  // namespace proxflow
