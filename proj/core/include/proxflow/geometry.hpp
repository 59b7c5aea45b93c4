#pragma once

#include <cstddef>
#include <variant>

#include "proxflow/errors.hpp"
#include "proxflow/state.hpp"

namespace proxflow {

// Elementary feasible sets with closed-form distance and projection.
// All of them are uniformly prox-regular; prox_radius() reports the radius.

// feasible inside the closed ball (convex)
struct Ball {
  StateVector center;
  double radius;
};

// feasible outside the open ball, i.e. { x : ||x - center|| >= radius }
struct BallComplement {
  StateVector center;
  double radius;
};

// { x : ||X_i - X_j|| >= min_dist } in the joint space,
// X_k being the k-th block of dim coordinates
struct PairwiseDistance {
  std::size_t i;
  std::size_t j;
  std::size_t dim;
  double min_dist;
};

// { x : <normal, x> >= offset }, normal has unit Euclidean norm
struct HalfSpace {
  StateVector normal;
  double offset;
};

using ConstraintDescriptor = std::variant<Ball, BallComplement, PairwiseDistance, HalfSpace>;

// checks the descriptor's own invariants (positive radii, i != j, unit normal, finite entries)
void validate(const ConstraintDescriptor& c);

// smallest state length the descriptor can act on
std::size_t min_state_dim(const ConstraintDescriptor& c);

// true when the descriptor pins the exact state length (all variants except PairwiseDistance)
bool pins_state_dim(const ConstraintDescriptor& c);

// point-set distance d_{S_c}(x); zero iff feasible.
// PairwiseDistance measures in the joint space: max(0, min_dist - ||X_i - X_j||)/sqrt(2).
double distance(const ConstraintDescriptor& c, const StateVector& x);

// nearest feasible point; identity on feasible input
StateVector project(const ConstraintDescriptor& c, const StateVector& x);

// projects in place, returns true when x moved; same errors as project
bool project_inplace(const ConstraintDescriptor& c, StateVector& x);

// x - project(c, x), a proximal normal at the projection point; requires distance > 0
StateVector proximal_normal(const ConstraintDescriptor& c, const StateVector& x_infeasible);

// prox-regularity radius: +inf for the convex variants, radius for BallComplement,
// min_dist/2 for PairwiseDistance
double prox_radius(const ConstraintDescriptor& c);

// overlap form min_dist - ||X_i - X_j|| (clamped at 0); differs from distance() by sqrt(2)
double pair_overlap(const PairwiseDistance& c, const StateVector& x);

}  // namespace proxflow
