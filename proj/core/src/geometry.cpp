#include "proxflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace proxflow {

namespace {

constexpr double kUnitNormalTol = 1e-12;
const double kSqrt2 = std::sqrt(2.0);

void require(bool cond, const char* what) {
  if (!cond) throw ContractViolation(what);
}

void check_state(const ConstraintDescriptor& c, const StateVector& x) {
  std::size_t need = min_state_dim(c);
  if (pins_state_dim(c)) {
    if (x.size() != need)
      throw ContractViolation("state length " + std::to_string(x.size()) +
                              " does not match constraint dimension " + std::to_string(need));
  } else if (x.size() < need) {
    throw ContractViolation("state length " + std::to_string(x.size()) +
                            " too short for constraint needing " + std::to_string(need));
  }
}

double center_dist(const StateVector& center, const StateVector& x) {
  double s = 0.0;
  for (std::size_t k = 0; k < center.size(); ++k) {
    double d = x[k] - center[k];
    s += d * d;
  }
  return std::sqrt(s);
}

double block_gap(const PairwiseDistance& c, const StateVector& x) {
  std::size_t io = c.i * c.dim, jo = c.j * c.dim;
  double s = 0.0;
  for (std::size_t k = 0; k < c.dim; ++k) {
    double d = x[io + k] - x[jo + k];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

void validate(const ConstraintDescriptor& c) {
  if (const auto* b = std::get_if<Ball>(&c)) {
    require(!b->center.empty(), "Ball.center must be non-empty");
    require(all_finite(b->center), "Ball.center must be finite");
    require(std::isfinite(b->radius) && b->radius > 0.0, "Ball.radius must be positive");
  } else if (const auto* b = std::get_if<BallComplement>(&c)) {
    require(!b->center.empty(), "BallComplement.center must be non-empty");
    require(all_finite(b->center), "BallComplement.center must be finite");
    require(std::isfinite(b->radius) && b->radius > 0.0, "BallComplement.radius must be positive");
  } else if (const auto* p = std::get_if<PairwiseDistance>(&c)) {
    require(p->i != p->j, "PairwiseDistance needs distinct particle indices");
    require(p->dim >= 1, "PairwiseDistance.dim must be at least 1");
    require(std::isfinite(p->min_dist) && p->min_dist > 0.0,
            "PairwiseDistance.min_dist must be positive");
  } else if (const auto* h = std::get_if<HalfSpace>(&c)) {
    require(!h->normal.empty(), "HalfSpace.normal must be non-empty");
    require(all_finite(h->normal), "HalfSpace.normal must be finite");
    require(std::isfinite(h->offset), "HalfSpace.offset must be finite");
    require(std::abs(norm(h->normal) - 1.0) <= kUnitNormalTol,
            "HalfSpace.normal must have unit length");
  }
}

std::size_t min_state_dim(const ConstraintDescriptor& c) {
  if (const auto* b = std::get_if<Ball>(&c)) return b->center.size();
  if (const auto* b = std::get_if<BallComplement>(&c)) return b->center.size();
  if (const auto* p = std::get_if<PairwiseDistance>(&c)) return (std::max(p->i, p->j) + 1) * p->dim;
  return std::get<HalfSpace>(c).normal.size();
}

bool pins_state_dim(const ConstraintDescriptor& c) {
  return !std::holds_alternative<PairwiseDistance>(c);
}

double distance(const ConstraintDescriptor& c, const StateVector& x) {
  check_state(c, x);
  if (const auto* b = std::get_if<Ball>(&c))
    return std::max(0.0, center_dist(b->center, x) - b->radius);
  if (const auto* b = std::get_if<BallComplement>(&c))
    return std::max(0.0, b->radius - center_dist(b->center, x));
  if (const auto* p = std::get_if<PairwiseDistance>(&c))
    return std::max(0.0, p->min_dist - block_gap(*p, x)) / kSqrt2;
  const auto& h = std::get<HalfSpace>(c);
  return std::max(0.0, h.offset - dot(h.normal, x));
}

bool project_inplace(const ConstraintDescriptor& c, StateVector& x) {
  check_state(c, x);
  if (const auto* b = std::get_if<Ball>(&c)) {
    double r = center_dist(b->center, x);
    if (r <= b->radius) return false;
    double scale = b->radius / r;
    for (std::size_t k = 0; k < x.size(); ++k)
      x[k] = b->center[k] + scale * (x[k] - b->center[k]);
    return true;
  }
  if (const auto* b = std::get_if<BallComplement>(&c)) {
    double r = center_dist(b->center, x);
    if (r >= b->radius) return false;
    if (r == 0.0)
      throw AmbiguousProjection("projection onto a sphere exterior is non-unique at the center");
    double scale = b->radius / r;
    for (std::size_t k = 0; k < x.size(); ++k)
      x[k] = b->center[k] + scale * (x[k] - b->center[k]);
    return true;
  }
  if (const auto* p = std::get_if<PairwiseDistance>(&c)) {
    double gap = block_gap(*p, x);
    if (gap >= p->min_dist) return false;
    if (gap == 0.0)
      throw AmbiguousProjection("projection of coincident particle blocks is non-unique");
    // split the missing separation symmetrically along the center line
    double push = 0.5 * (p->min_dist - gap) / gap;
    std::size_t io = p->i * p->dim, jo = p->j * p->dim;
    for (std::size_t k = 0; k < p->dim; ++k) {
      double d = x[io + k] - x[jo + k];
      x[io + k] += push * d;
      x[jo + k] -= push * d;
    }
    return true;
  }
  const auto& h = std::get<HalfSpace>(c);
  double slack = h.offset - dot(h.normal, x);
  if (slack <= 0.0) return false;
  add_scaled(x, slack, h.normal);
  return true;
}

StateVector project(const ConstraintDescriptor& c, const StateVector& x) {
  StateVector y = x;
  project_inplace(c, y);
  return y;
}

StateVector proximal_normal(const ConstraintDescriptor& c, const StateVector& x_infeasible) {
  StateVector y = x_infeasible;
  if (!project_inplace(c, y))
    throw ZeroNormal("proximal normal requested at a feasible point");
  return sub(x_infeasible, y);
}

double prox_radius(const ConstraintDescriptor& c) {
  if (const auto* b = std::get_if<BallComplement>(&c)) return b->radius;
  if (const auto* p = std::get_if<PairwiseDistance>(&c)) return p->min_dist / 2.0;
  return std::numeric_limits<double>::infinity();
}

double pair_overlap(const PairwiseDistance& c, const StateVector& x) {
  check_state(ConstraintDescriptor(c), x);
  return std::max(0.0, c.min_dist - block_gap(c, x));
}

}  // namespace proxflow
