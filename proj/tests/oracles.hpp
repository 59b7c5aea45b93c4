#pragma once

// Independent numeric oracles used by the unit tests. These deliberately avoid
// the library's own projection machinery so that agreement is evidence.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace test_oracles {

using Vec = std::vector<double>;

inline double dist2d(const Vec& q, std::size_t a, std::size_t b) {
  double dx = q[2 * a] - q[2 * b];
  double dy = q[2 * a + 1] - q[2 * b + 1];
  return std::sqrt(dx * dx + dy * dy);
}

inline double norm_diff(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

// Brute-force projection of a two-particle 2d state onto {‖Q_0 − Q_1‖ ≥ min_dist}
// by a zooming grid search over all four coordinates. Slow but assumption-free.
inline std::pair<double, Vec> grid_project_pair(const Vec& x, double min_dist) {
  Vec center = x;
  double half = min_dist;  // initial search half-width per coordinate
  Vec best = x;
  double best_cost = 1e300;
  const int pts = 13;
  for (int level = 0; level < 6; ++level) {
    for (int i0 = 0; i0 < pts; ++i0)
      for (int i1 = 0; i1 < pts; ++i1)
        for (int i2 = 0; i2 < pts; ++i2)
          for (int i3 = 0; i3 < pts; ++i3) {
            Vec q(4);
            int idx[4] = {i0, i1, i2, i3};
            for (int k = 0; k < 4; ++k)
              q[k] = center[k] + half * (2.0 * idx[k] / (pts - 1) - 1.0);
            if (dist2d(q, 0, 1) < min_dist) continue;
            double c = norm_diff(q, x);
            if (c < best_cost) {
              best_cost = c;
              best = q;
            }
          }
    center = best;
    half /= 4.0;
  }
  return {best_cost, best};
}

// Solves A s = b for a small dense system (Gaussian elimination with
// partial pivoting). Used by the Newton oracle below.
inline Vec solve_dense(std::vector<Vec> A, Vec b) {
  std::size_t n = b.size();
  Vec s(n, 0.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(A[r][col]) > std::fabs(A[piv][col])) piv = r;
    std::swap(A[col], A[piv]);
    std::swap(b[col], b[piv]);
    for (std::size_t r = col + 1; r < n; ++r) {
      double f = A[r][col] / A[col][col];
      for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t ri = n; ri-- > 0;) {
    double acc = b[ri];
    for (std::size_t c = ri + 1; c < n; ++c) acc -= A[ri][c] * s[c];
    s[ri] = acc / A[ri][ri];
  }
  return s;
}

// Projection onto the non-overlap set of n disks via a quadratic-penalty
// continuation: minimize ‖q−x‖²/2 + μ/2 Σ max(0, min_dist − ‖Q_i−Q_j‖)²
// with damped Newton steps (finite-difference Hessian) and increasing
// stiffness μ. First-order oracle for P_S, independent of the sweep code.
inline Vec penalty_project_disks(const Vec& x, std::size_t n, double min_dist) {
  Vec q = x;
  auto value = [&](const Vec& p) {
    double f = 0.5 * norm_diff(p, x) * norm_diff(p, x);
    return f;  // penalty part added by caller with mu
  };
  auto pen = [&](const Vec& p) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double overlap = min_dist - dist2d(p, i, j);
        if (overlap > 0.0) s += overlap * overlap;
      }
    return 0.5 * s;
  };
  auto grad = [&](const Vec& p, double mu, Vec& g) {
    g.assign(p.size(), 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) g[k] = p[k] - x[k];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double d = dist2d(p, i, j);
        double overlap = min_dist - d;
        if (overlap <= 0.0 || d == 0.0) continue;
        double cx = (p[2 * i] - p[2 * j]) / d;
        double cy = (p[2 * i + 1] - p[2 * j + 1]) / d;
        g[2 * i] += mu * overlap * (-cx);
        g[2 * i + 1] += mu * overlap * (-cy);
        g[2 * j] += mu * overlap * cx;
        g[2 * j + 1] += mu * overlap * cy;
      }
  };
  std::size_t dim = q.size();
  Vec g(dim), gp(dim), gm(dim);
  for (double mu : {1e2, 1e4, 1e6, 1e8, 1e10}) {
    for (int it = 0; it < 40; ++it) {
      grad(q, mu, g);
      double gn = 0.0;
      for (double v : g) gn += v * v;
      if (std::sqrt(gn) <= 1e-12 * (1.0 + mu * min_dist)) break;
      std::vector<Vec> H(dim, Vec(dim, 0.0));
      double eps = 1e-7 * min_dist;
      for (std::size_t k = 0; k < dim; ++k) {
        Vec hi = q, lo = q;
        hi[k] += eps;
        lo[k] -= eps;
        grad(hi, mu, gp);
        grad(lo, mu, gm);
        for (std::size_t r = 0; r < dim; ++r) H[r][k] = (gp[r] - gm[r]) / (2.0 * eps);
      }
      for (std::size_t k = 0; k < dim; ++k) H[k][k] += 1e-9 * (1.0 + mu);
      Vec s = solve_dense(H, g);
      double f0 = value(q) + mu * pen(q);
      double t = 1.0;
      for (int bt = 0; bt < 40; ++bt) {
        Vec trial = q;
        for (std::size_t k = 0; k < dim; ++k) trial[k] -= t * s[k];
        if (value(trial) + mu * pen(trial) <= f0) {
          q = trial;
          break;
        }
        t *= 0.5;
      }
    }
  }
  return q;
}

// Central finite difference of the map x ↦ d(x)²/2 for a caller-supplied
// distance function. Cross-checks analytic penalty forces.
template <typename DistFn>
inline Vec fd_grad_half_dsq(const DistFn& dist, const Vec& x, double eps = 1e-6) {
  Vec g(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    Vec hi = x, lo = x;
    hi[k] += eps;
    lo[k] -= eps;
    double fh = dist(hi), fl = dist(lo);
    g[k] = (fh * fh - fl * fl) / (4.0 * eps);
  }
  return g;
}

}  // namespace test_oracles
