#include "proxflow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "proxflow/intersection.hpp"
#include "proxflow/problems.hpp"
#include "proxflow/solvers.hpp"

namespace proxflow {

namespace {

const double kSqrt2 = std::sqrt(2.0);

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  double unit() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + unit() * (hi - lo); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine() % n); }
  StateVector direction(std::size_t dim) {
    // rejection-free: normalize a vector of centered uniforms, retry on tiny
    for (;;) {
      StateVector v(dim);
      for (auto& t : v) t = uniform(-1.0, 1.0);
      double len = norm(v);
      if (len > 1e-3) {
        for (auto& t : v) t /= len;
        return v;
      }
    }
  }
};

// n non-overlapping disk centers in a box with side 4R*sqrt(n)
StateVector random_feasible_disks(Rng& rng, std::size_t n, double R) {
  double half = 2.0 * R * std::sqrt(static_cast<double>(n)) - R;
  StateVector x;
  x.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (;;) {
      double px = rng.uniform(-half, half), py = rng.uniform(-half, half);
      bool ok = true;
      for (std::size_t k = 0; k < i; ++k) {
        double dx = px - x[2 * k], dy = py - x[2 * k + 1];
        if (dx * dx + dy * dy < 4.0 * R * R) {
          ok = false;
          break;
        }
      }
      if (ok) {
        x.push_back(px);
        x.push_back(py);
        break;
      }
    }
  }
  return x;
}

ConstraintSystem disk_system(std::size_t n, double R) {
  std::vector<ConstraintDescriptor> cs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) cs.push_back(PairwiseDistance{i, j, 2, 2.0 * R});
  return make_system(std::move(cs), 2 * n);
}

PropertyResult make_result(std::string name, std::string note) {
  PropertyResult r;
  r.name = std::move(name);
  r.note = std::move(note);
  return r;
}

void finish(PropertyResult& r, SuiteResult& suite) {
  r.passed = r.violations == 0;
  suite.passed = suite.passed && r.passed;
  suite.properties.push_back(std::move(r));
}

ConstraintDescriptor random_constraint(Rng& rng, std::size_t which) {
  switch (which % 4) {
    case 0: {
      std::size_t d = 2 + rng.index(2);
      StateVector c(d);
      for (auto& t : c) t = rng.uniform(-2.0, 2.0);
      return Ball{std::move(c), rng.uniform(0.5, 2.0)};
    }
    case 1: {
      std::size_t d = 2 + rng.index(2);
      StateVector c(d);
      for (auto& t : c) t = rng.uniform(-2.0, 2.0);
      return BallComplement{std::move(c), rng.uniform(0.5, 2.0)};
    }
    case 2:
      return PairwiseDistance{0, 1, 2, rng.uniform(0.1, 0.6)};
    default: {
      std::size_t d = 2 + rng.index(2);
      return HalfSpace{rng.direction(d), rng.uniform(-1.0, 1.0)};
    }
  }
}

StateVector random_point_for(Rng& rng, const ConstraintDescriptor& c) {
  StateVector x(min_state_dim(c));
  for (auto& t : x) t = rng.uniform(-3.0, 3.0);
  return x;
}

// feasible point of a single constraint, used as an integration start
StateVector random_feasible_point(Rng& rng, const ConstraintDescriptor& c) {
  if (const auto* b = std::get_if<Ball>(&c)) {
    StateVector x = b->center;
    add_scaled(x, rng.uniform(0.0, 0.95) * b->radius, rng.direction(x.size()));
    return x;
  }
  if (const auto* b = std::get_if<BallComplement>(&c)) {
    StateVector x = b->center;
    add_scaled(x, rng.uniform(1.05, 2.5) * b->radius, rng.direction(x.size()));
    return x;
  }
  if (const auto* p = std::get_if<PairwiseDistance>(&c)) {
    StateVector x(min_state_dim(c));
    for (auto& t : x) t = rng.uniform(-1.0, 1.0);
    StateVector dir = rng.direction(p->dim);
    double sep = rng.uniform(1.05, 2.0) * p->min_dist;
    for (std::size_t k = 0; k < p->dim; ++k) x[p->j * p->dim + k] = x[p->i * p->dim + k] + sep * dir[k];
    return x;
  }
  const auto& h = std::get<HalfSpace>(c);
  StateVector x(h.normal.size());
  for (auto& t : x) t = rng.uniform(-2.0, 2.0);
  double slack = dot(h.normal, x) - h.offset;
  if (slack < 0.5) add_scaled(x, -slack + rng.uniform(0.5, 1.5), h.normal);
  return x;
}

// ---- geometry suite -------------------------------------------------------

void check_projection_laws(SuiteResult& suite, const VerifyOptions& opts) {
  Rng rng(opts.seed + 11);
  auto idem = make_result("projection-idempotent", "worst = max ||P(P(x)) - P(x)||");
  auto cons = make_result("distance-consistency", "worst = max | ||x - P(x)|| - d(x) |");
  auto lips = make_result("distance-lipschitz", "worst = max |d(x)-d(y)| - ||x-y||");
  for (std::size_t s = 0; s < opts.geometry_samples; ++s) {
    ConstraintDescriptor c = random_constraint(rng, s);
    StateVector x = random_point_for(rng, c);
    StateVector y = random_point_for(rng, c);
    StateVector px;
    try {
      px = project(c, x);
    } catch (const AmbiguousProjection&) {
      continue;  // measure-zero degenerate draw
    }
    ++idem.samples;
    double dev = diff_norm(project(c, px), px);
    idem.worst = std::max(idem.worst, dev);
    if (dev > 1e-12) ++idem.violations;

    ++cons.samples;
    double gap = std::abs(diff_norm(x, px) - distance(c, x));
    cons.worst = std::max(cons.worst, gap);
    if (gap > 1e-12) ++cons.violations;

    ++lips.samples;
    double excess = std::abs(distance(c, x) - distance(c, y)) - diff_norm(x, y);
    lips.worst = std::max(lips.worst, excess);
    if (excess > 1e-12) ++lips.violations;
  }
  finish(idem, suite);
  finish(cons, suite);
  finish(lips, suite);
}

void check_hypomonotonicity(SuiteResult& suite, const VerifyOptions& opts) {
  Rng rng(opts.seed + 12);
  auto pairwise = make_result("hypomonotonicity-pairwise",
                              "worst = max -<v-w,x-y> - (||v||+||w||)/(2 eta) ||x-y||^2");
  for (std::size_t s = 0; s < opts.hypomonotonicity_samples; ++s) {
    double R = rng.uniform(0.05, 0.3);
    PairwiseDistance c{0, 1, 2, 2.0 * R};
    double eta = prox_radius(ConstraintDescriptor(c));
    auto infeasible_draw = [&]() {
      StateVector q(4);
      q[0] = rng.uniform(-1.0, 1.0);
      q[1] = rng.uniform(-1.0, 1.0);
      StateVector dir = rng.direction(2);
      double gap = rng.uniform(0.05, 0.999) * c.min_dist;
      q[2] = q[0] + gap * dir[0];
      q[3] = q[1] + gap * dir[1];
      return q;
    };
    StateVector q1 = infeasible_draw();
    StateVector q2 = infeasible_draw();
    ConstraintDescriptor cd(c);
    StateVector x = project(cd, q1), y = project(cd, q2);
    StateVector v = sub(q1, x), w = sub(q2, y);
    double lhs = -(dot(sub(v, w), sub(x, y)));
    double d2 = diff_norm(x, y);
    double rhs = (norm(v) + norm(w)) / (2.0 * eta) * d2 * d2;
    ++pairwise.samples;
    pairwise.worst = std::max(pairwise.worst, lhs - rhs);
    if (lhs > rhs + 1e-10) ++pairwise.violations;
  }
  finish(pairwise, suite);

  Rng rng2(opts.seed + 13);
  auto convex = make_result("hypomonotonicity-convex",
                            "worst = max -<v-w,x-y> over ball and half-space draws");
  for (std::size_t s = 0; s < opts.hypomonotonicity_samples; ++s) {
    ConstraintDescriptor c = random_constraint(rng2, (s % 2 == 0) ? 0u : 3u);
    StateVector q1 = random_point_for(rng2, c);
    StateVector q2 = random_point_for(rng2, c);
    if (distance(c, q1) == 0.0 || distance(c, q2) == 0.0) continue;
    StateVector x = project(c, q1), y = project(c, q2);
    StateVector v = sub(q1, x), w = sub(q2, y);
    double lhs = -(dot(sub(v, w), sub(x, y)));
    ++convex.samples;
    convex.worst = std::max(convex.worst, lhs);
    if (lhs > 1e-10) ++convex.violations;
  }
  finish(convex, suite);
}

// ---- lemmas suite ---------------------------------------------------------

void check_sweep_lemmas(SuiteResult& suite, const VerifyOptions& opts) {
  Rng rng(opts.seed + 21);
  auto growth = make_result("sweep-error-bounds",
                            "worst = max excess over the 2^{j-1} d0 / 2^j d0 bounds");
  auto single = make_result("single-projection-error",
                            "worst = max excess over the per-projection error recursion");
  OracleTols tols{1e-12, 1e-12, kDefaultMaxSweeps};
  for (std::size_t s = 0; s < opts.lemma_traces; ++s) {
    std::size_t n = 3 + rng.index(3);
    double R = rng.uniform(0.05, 0.3);
    ConstraintSystem sys = disk_system(n, R);
    double eta = sys.prox_radius_hint;  // = R
    std::size_t m = sys.size();
    StateVector base = random_feasible_disks(rng, n, R);
    double budget = 0.9 * std::ldexp(eta, 1 - static_cast<int>(m));
    StateVector q0 = base;
    add_scaled(q0, rng.uniform(0.1, 1.0) * budget, rng.direction(2 * n));

    StateVector proj = project_exact(sys, q0, tols.abstol, tols.reltol, tols.max_sweeps);
    double d0 = diff_norm(q0, proj);
    auto [qm, trace] = sweep(sys, q0);
    (void)qm;

    ++growth.samples;
    ++single.samples;
    bool growth_bad = false, single_bad = false;

    double prev_err = d0;  // ||e_0|| = ||q_0 - P_S(q_0)||
    for (std::size_t j = 0; j < m; ++j) {
      double vj = norm(trace.v[j]);
      double bound_v = std::ldexp(d0, static_cast<int>(j)) + 1e-10;
      if (vj > bound_v) growth_bad = true;
      growth.worst = std::max(growth.worst, vj - bound_v);

      double dq = diff_norm(trace.q[j + 1],
                            project_exact(sys, trace.q[j + 1], tols.abstol, tols.reltol,
                                          tols.max_sweeps));
      double bound_q = std::ldexp(d0, static_cast<int>(j) + 1) + 1e-10;
      if (dq > bound_q) growth_bad = true;
      growth.worst = std::max(growth.worst, dq - bound_q);

      double err = diff_norm(trace.q[j + 1], proj);
      if (vj < eta && prev_err > 0.0) {
        double shrink = 1.0 - (vj * vj) / (prev_err * prev_err);
        double rhs = (1.0 / (1.0 - vj / eta)) * shrink * prev_err * prev_err + 1e-10;
        if (err * err > rhs) single_bad = true;
        single.worst = std::max(single.worst, err * err - rhs);
      }
      prev_err = err;
    }
    if (growth_bad) ++growth.violations;
    if (single_bad) ++single.violations;
  }
  finish(growth, suite);
  finish(single, suite);
}

void check_contraction(SuiteResult& suite, const VerifyOptions& opts) {
  Rng rng(opts.seed + 22);
  auto contraction = make_result("iterated-projection-contraction",
                                 "worst = max ||sweep(q0) - P_S(q0)|| / d_S(q0)");
  OracleTols tols{1e-12, 1e-12, kDefaultMaxSweeps};
  while (contraction.samples < opts.contraction_samples) {
    std::size_t n = 3 + rng.index(3);
    double R = rng.uniform(0.05, 0.3);
    ConstraintSystem sys = disk_system(n, R);
    StateVector base = random_feasible_disks(rng, n, R);
    StateVector q0, proj;
    double d0 = 0.0;
    bool found = false;
    for (int tries = 0; tries < 20 && !found; ++tries) {
      q0 = base;
      add_scaled(q0, rng.uniform(0.01, 0.9) * 0.1 * R, rng.direction(2 * n));
      proj = project_exact(sys, q0, tols.abstol, tols.reltol, tols.max_sweeps);
      d0 = diff_norm(q0, proj);
      found = d0 >= 1e-6 * R && d0 < 0.1 * R;
    }
    if (!found) continue;
    StateVector qm = q0;
    sweep_inplace(sys, qm);
    double ratio = diff_norm(qm, proj) / d0;
    ++contraction.samples;
    contraction.worst = std::max(contraction.worst, ratio);
    if (ratio > 0.999) ++contraction.violations;
  }
  finish(contraction, suite);
}

void check_cluster_covers(SuiteResult& suite, const VerifyOptions& opts) {
  Rng rng(opts.seed + 23);
  auto cover = make_result("cluster-cover-conditions",
                           "worst = max cover slack / disjointness deficit, scaled by R");
  std::size_t trials = std::max<std::size_t>(200, opts.calmness_samples / 2);
  for (std::size_t s = 0; s < trials; ++s) {
    std::size_t n = 1 + rng.index(6);
    double R = rng.uniform(0.02, 0.5);
    std::vector<StateVector> pts;
    for (std::size_t i = 0; i < n; ++i) {
      StateVector p(2);
      p[0] = rng.uniform(-3.0 * R, 3.0 * R);
      p[1] = rng.uniform(-3.0 * R, 3.0 * R);
      pts.push_back(std::move(p));
    }
    ClusterCover cc = cluster_covers(pts, R);
    ++cover.samples;
    bool bad = cc.m != cc.centers.size() || cc.L > 2 * (n - 1);
    double big = std::ldexp(R, static_cast<int>(cc.L));
    for (const auto& p : pts) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : cc.centers) best = std::min(best, diff_norm(p, q));
      double slack = best + R - big;  // B_R(p) inside B_{2^L R}(q)
      cover.worst = std::max(cover.worst, slack / R);
      if (slack > 1e-9 * R) bad = true;
    }
    double doubled = std::ldexp(R, static_cast<int>(cc.L) + 2);
    for (std::size_t i = 0; i < cc.centers.size(); ++i)
      for (std::size_t j = i + 1; j < cc.centers.size(); ++j) {
        double deficit = doubled - diff_norm(cc.centers[i], cc.centers[j]);
        cover.worst = std::max(cover.worst, deficit / R);
        if (deficit > 1e-9 * R) bad = true;
      }
    if (bad) ++cover.violations;
  }
  finish(cover, suite);
}

// ---- calmness suite -------------------------------------------------------

void check_calmness(SuiteResult& suite, const VerifyOptions& opts) {
  Rng rng(opts.seed + 31);
  auto bound = make_result("metric-calmness-bound",
                           "worst = min max_j d_j(x) / (alpha_test * d_S(x)); must stay >= 1");
  auto branch = make_result("feasible-point-branch-bounds",
                            "worst = max bound excess relative to the branch bound");
  bound.worst = std::numeric_limits<double>::infinity();
  OracleTols tols{1e-12, 1e-12, kDefaultMaxSweeps};
  while (bound.samples < opts.calmness_samples) {
    std::size_t n = 2 + rng.index(3);
    double R = rng.uniform(0.05, 0.3);
    ConstraintSystem sys = disk_system(n, R);
    StateVector x(2 * n);
    double half = 1.5 * R * std::sqrt(static_cast<double>(n));
    for (auto& t : x) t = rng.uniform(-half, half);
    double dmax = max_constraint_distance(sys, x);
    if (dmax == 0.0) continue;

    StateVector y = feasible_point_disks(x, n, 2, R);
    double d_build = diff_norm(x, y);
    double d_oracle;
    try {
      d_oracle = diff_norm(x, project_exact(sys, x, tols.abstol, tols.reltol, tols.max_sweeps));
    } catch (const NoConvergence&) {
      d_oracle = std::numeric_limits<double>::infinity();
    }
    double ds = std::min(d_build, d_oracle);
    if (ds == 0.0) continue;

    double alpha_test = 1.0 / (static_cast<double>(n) * std::ldexp(1.0, 2 * static_cast<int>(n) + 1));
    double margin = dmax / (alpha_test * ds);
    ++bound.samples;
    bound.worst = std::min(bound.worst, margin);
    if (margin < 1.0) ++bound.violations;

    // branch bound for the constructed feasible point
    double D = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double dx = x[2 * i] - x[2 * j], dy = x[2 * i + 1] - x[2 * j + 1];
        D = std::max(D, 2.0 * R - std::sqrt(dx * dx + dy * dy));
      }
    ++branch.samples;
    bool bad = false;
    for (std::size_t i = 0; i < n && !bad; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double dx = y[2 * i] - y[2 * j], dy = y[2 * i + 1] - y[2 * j + 1];
        if (std::sqrt(dx * dx + dy * dy) < 2.0 * R - 1e-9) {
          bad = true;
          break;
        }
      }
    if (D > R) {
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double dx = x[2 * i] - y[2 * i], dy = x[2 * i + 1] - y[2 * i + 1];
        total += std::sqrt(dx * dx + dy * dy);
      }
      double cap = 2.0 * R * static_cast<double>(n * (n - 1)) / 2.0 + 1e-9;
      branch.worst = std::max(branch.worst, total - cap);
      if (total > cap) bad = true;
    } else if (D > 0.0) {
      double cap = static_cast<double>(n) * std::ldexp(1.0, 2 * (static_cast<int>(n) - 1)) * D +
                   1e-9;
      branch.worst = std::max(branch.worst, d_build - cap);
      if (d_build > cap) bad = true;
    }
    if (bad) ++branch.violations;
  }
  finish(bound, suite);
  finish(branch, suite);

  Rng rng2(opts.seed + 32);
  auto single = make_result("single-constraint-ratio",
                            "worst = max |calmness ratio - 1| on one-constraint systems");
  for (std::size_t s = 0; s < 200; ++s) {
    ConstraintDescriptor c = random_constraint(rng2, s);
    ConstraintSystem sys = make_system({c});
    StateVector x = random_point_for(rng2, c);
    if (distance(c, x) == 0.0) continue;
    double ratio;
    try {
      ratio = calmness_ratio(sys, x, OracleTols{});
    } catch (const AmbiguousProjection&) {
      continue;
    }
    ++single.samples;
    single.worst = std::max(single.worst, std::abs(ratio - 1.0));
    if (std::abs(ratio - 1.0) > 1e-9) ++single.violations;
  }
  finish(single, suite);
}

// ---- stability suite ------------------------------------------------------

VectorField random_affine_field(Rng& rng, std::size_t dim) {
  std::vector<double> A(dim * dim);
  StateVector b(dim);
  for (auto& t : A) t = rng.uniform(-0.5, 0.5);
  for (auto& t : b) t = rng.uniform(-1.0, 1.0);
  return VectorField{[A, b, dim](const StateVector& x) {
                       StateVector g(dim);
                       for (std::size_t r = 0; r < dim; ++r) {
                         double acc = b[r];
                         for (std::size_t c = 0; c < dim; ++c) acc += A[r * dim + c] * x[c];
                         g[r] = acc;
                       }
                       return g;
                     },
                     std::nullopt, std::nullopt};
}

void check_scheme_equivalence(SuiteResult& suite, const VerifyOptions& opts) {
  Rng rng(opts.seed + 41);
  auto equiv = make_result("scheme-equivalence",
                           "worst = max state difference between the three schemes, m = 1");
  for (std::size_t s = 0; s < opts.equivalence_runs; ++s) {
    ConstraintDescriptor c = random_constraint(rng, s);
    ConstraintSystem sys = make_system({c});
    StateVector x0 = random_feasible_point(rng, c);
    VectorField f = random_affine_field(rng, sys.state_dim);
    double h = rng.uniform(0.01, 0.1);
    std::size_t n = 16;
    double T = h * static_cast<double>(n);
    Trajectory a = integrate(PBD{}, sys, f, x0, T, n);
    Trajectory b = integrate(MoreauEuler{1e-13, 1e-16}, sys, f, x0, T, n);
    Trajectory d = integrate(PNGS{1e-13, 1e-16}, sys, f, x0, T, n);
    double dev = 0.0;
    for (std::size_t k = 0; k < a.states.size(); ++k) {
      dev = std::max(dev, diff_norm(a.states[k], b.states[k]));
      dev = std::max(dev, diff_norm(a.states[k], d.states[k]));
    }
    ++equiv.samples;
    equiv.worst = std::max(equiv.worst, dev);
    if (dev != 0.0) ++equiv.violations;
  }
  finish(equiv, suite);
}

void check_stationary_states(SuiteResult& suite, const VerifyOptions& opts) {
  Rng rng(opts.seed + 42);
  auto stationary = make_result("stationary-feasible-states",
                                "worst = max drift of a feasible state under zero force");
  std::size_t runs = std::max<std::size_t>(50, opts.equivalence_runs / 2);
  for (std::size_t s = 0; s < runs; ++s) {
    ConstraintDescriptor c = random_constraint(rng, s);
    ConstraintSystem sys = make_system({c});
    StateVector x0 = random_feasible_point(rng, c);
    VectorField zero{[](const StateVector& x) { return StateVector(x.size(), 0.0); },
                     0.0, 0.0};
    std::vector<SchemeSpec> schemes = {PBD{}, MoreauEuler{1e-12, 1e-12}, PNGS{1e-12, 1e-12},
                                       PGS{1e-12, 1e-12}, Penalty{5.0}};
    double dev = 0.0;
    for (const auto& scheme : schemes) {
      Trajectory t = integrate(scheme, sys, zero, x0, 1.0, 10);
      for (const auto& st : t.states) dev = std::max(dev, diff_norm(st, x0));
    }
    ++stationary.samples;
    stationary.worst = std::max(stationary.worst, dev);
    if (dev != 0.0) ++stationary.violations;
  }
  finish(stationary, suite);
}

// shared by the violation and displacement checks
struct PbdRatios {
  std::vector<double> violation;     // max_k d_S(x_k)/h per step count
  std::vector<double> displacement;  // max_k ||x_{k+1}-x_k||/h per step count
};

PbdRatios pbd_ratios(const ConstraintSystem& sys, const VectorField& f, const StateVector& x0,
                     double T, const std::vector<std::size_t>& ns) {
  PbdRatios out;
  OracleTols tols{1e-12, 1e-12, kDefaultMaxSweeps};
  for (std::size_t n : ns) {
    Trajectory traj = integrate(PBD{}, sys, f, x0, T, n);
    double h = T / static_cast<double>(n);
    double worst_violation = 0.0, worst_disp = 0.0;
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
      double d = diff_norm(traj.states[k],
                           project_exact(sys, traj.states[k], tols.abstol, tols.reltol,
                                         tols.max_sweeps));
      worst_violation = std::max(worst_violation, d);
      if (k + 1 < traj.states.size())
        worst_disp = std::max(worst_disp, diff_norm(traj.states[k + 1], traj.states[k]));
    }
    out.violation.push_back(worst_violation / h);
    out.displacement.push_back(worst_disp / h);
  }
  return out;
}

// max/min across the step-size range, with an all-negligible escape
double spread(const std::vector<double>& r) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double v : r) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi <= 1e-12) return 1.0;
  return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

void check_pbd_stability(SuiteResult& suite, const VerifyOptions& opts) {
  (void)opts;
  auto violation = make_result("bounded-violation-ratio",
                               "worst = max spread of max_k d_S(x_k)/h across step sizes");
  auto displacement = make_result("step-displacement-ratio",
                                  "worst = max spread of max_k ||dx||/h across step sizes");
  std::vector<std::size_t> ns = {64, 512, 8192};

  auto [ssys, sx0] = sliding_system(3, 10.0, 0.19634954084936207);
  PbdRatios sliding = pbd_ratios(ssys, sliding_force(3), sx0, 4.0, ns);

  DisksProblem dp = disks_system(6, 0.1, 7);
  PbdRatios disks = pbd_ratios(disks_constraints(dp), disks_force(1.0), dp.x0, 2.0, ns);

  for (const auto& r : {sliding.violation, disks.violation}) {
    ++violation.samples;
    double s = spread(r);
    violation.worst = std::max(violation.worst, s);
    if (!(s < 3.0)) ++violation.violations;
  }
  for (const auto& r : {sliding.displacement, disks.displacement}) {
    ++displacement.samples;
    double s = spread(r);
    displacement.worst = std::max(displacement.worst, s);
    if (!(s < 3.0)) ++displacement.violations;
  }
  finish(violation, suite);
  finish(displacement, suite);
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"geometry", "lemmas", "calmness", "stability"};
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& opts) {
  SuiteResult suite;
  suite.suite = name;
  if (name == "geometry") {
    check_projection_laws(suite, opts);
    check_hypomonotonicity(suite, opts);
  } else if (name == "lemmas") {
    check_sweep_lemmas(suite, opts);
    check_contraction(suite, opts);
    check_cluster_covers(suite, opts);
  } else if (name == "calmness") {
    check_calmness(suite, opts);
  } else if (name == "stability") {
    check_scheme_equivalence(suite, opts);
    check_stationary_states(suite, opts);
    check_pbd_stability(suite, opts);
  } else {
    throw ContractViolation("unknown verification suite '" + name + "'");
  }
  if (opts.inject_violation) {
    PropertyResult injected = make_result("injected-violation", "synthetic failure hook");
    injected.samples = 1;
    injected.violations = 1;
    injected.worst = 1.0;
    finish(injected, suite);
  }
  return suite;
}

}  // namespace proxflow
