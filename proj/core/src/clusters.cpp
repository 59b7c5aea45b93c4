#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "proxflow/intersection.hpp"

namespace proxflow {

namespace {

StateVector block(const StateVector& x, std::size_t k, std::size_t dim) {
  return StateVector(x.begin() + static_cast<std::ptrdiff_t>(k * dim),
                     x.begin() + static_cast<std::ptrdiff_t>((k + 1) * dim));
}

double max_overlap(const std::vector<StateVector>& pts, double min_dist) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      d = std::max(d, min_dist - diff_norm(pts[i], pts[j]));
  return std::max(0.0, d);
}

}  // namespace

ClusterCover cluster_covers(const std::vector<StateVector>& positions, double R) {
  if (positions.empty()) throw ContractViolation("cluster cover needs at least one point");
  if (!(R > 0.0)) throw ContractViolation("cluster radius must be positive");
  std::vector<StateVector> Q = positions;
  unsigned L = 0;
  // Merge the first pair whose doubled balls of radius 2^{L+1} R intersect,
  // i.e. centers at most 2^{L+2} R apart. Each merge doubles the cover radius
  // twice, preserving ||X_i - Q_{k(i)}|| <= (2^L - 1) R.
  for (;;) {
    double threshold = std::ldexp(R, static_cast<int>(L) + 2);
    std::size_t a = Q.size(), b = Q.size();
    for (std::size_t i = 0; i < Q.size() && a == Q.size(); ++i) {
      for (std::size_t j = i + 1; j < Q.size(); ++j) {
        if (diff_norm(Q[i], Q[j]) <= threshold) {
          a = i;
          b = j;
          break;
        }
      }
    }
    if (a == Q.size()) break;
    for (std::size_t k = 0; k < Q[a].size(); ++k) Q[a][k] = 0.5 * (Q[a][k] + Q[b][k]);
    Q.erase(Q.begin() + static_cast<std::ptrdiff_t>(b));
    L += 2;
  }
  std::size_t m = Q.size();
  return ClusterCover{std::move(Q), L, m};
}

StateVector feasible_point_disks(const StateVector& x, std::size_t n, std::size_t dim, double R) {
  if (n < 1 || dim < 1) throw ContractViolation("need at least one block of positive dimension");
  if (!(R > 0.0)) throw ContractViolation("disk radius must be positive");
  if (x.size() != n * dim)
    throw ContractViolation("state length " + std::to_string(x.size()) +
                            " does not factor into " + std::to_string(n) + " blocks of " +
                            std::to_string(dim));
  if (n == 1) return x;

  std::vector<StateVector> pts;
  pts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) pts.push_back(block(x, k, dim));

  double min_dist = 2.0 * R;
  double D = max_overlap(pts, min_dist);
  if (D == 0.0) return x;

  std::vector<StateVector> out;
  out.reserve(n);
  if (D > R) {
    // Deep overlap: insert points one at a time, pushing the already-placed
    // ones a constant 2R further from the newcomer. The push is expansive, so
    // placed points stay mutually feasible.
    out.push_back(pts[0]);
    for (std::size_t k = 1; k < n; ++k) {
      const StateVector& xk = pts[k];
      for (auto& y : out) {
        StateVector dir = sub(y, xk);
        double len = norm(dir);
        if (len == 0.0) {
          dir.assign(dim, 0.0);
          dir[0] = 1.0;
          len = 1.0;
        }
        add_scaled(y, min_dist / len, dir);
      }
      out.push_back(xk);
    }
  } else {
    // Shallow overlap: dilate each cluster about its center until the worst
    // pair separates. Cross-cluster pairs stay apart because the doubled
    // cluster balls are disjoint by construction.
    ClusterCover cover = cluster_covers(pts, R);
    double c = min_dist / (min_dist - D);
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t q = 0; q < cover.centers.size(); ++q) {
        double d = diff_norm(pts[k], cover.centers[q]);
        if (d < best_d) {
          best_d = d;
          best = q;
        }
      }
      StateVector y = cover.centers[best];
      for (std::size_t t = 0; t < dim; ++t) y[t] += c * (pts[k][t] - cover.centers[best][t]);
      out.push_back(std::move(y));
    }
  }

  if (max_overlap(out, min_dist) > 1e-10)
    throw std::logic_error("internal: feasible-point construction left an overlap");

  StateVector flat;
  flat.reserve(n * dim);
  for (const auto& p : out) flat.insert(flat.end(), p.begin(), p.end());
  return flat;
}

}  // namespace proxflow
