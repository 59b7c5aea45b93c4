// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Each criterion re-derives its own evidence; nothing is read from caches.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "proxflow/bench.hpp"
#include "proxflow/intersection.hpp"
#include "proxflow/problems.hpp"
#include "proxflow/solvers.hpp"
#include "proxflow/verify.hpp"

using namespace proxflow;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

int g_failures = 0;

void report(int num, const std::string& name, bool ok, const std::string& detail, double secs,
            double budget_s) {
  std::string timing;
  char buf[64];
  if (budget_s > 0.0) {
    std::snprintf(buf, sizeof buf, " (%.2fs, budget %.0fs)", secs, budget_s);
  } else {
    std::snprintf(buf, sizeof buf, " (%.2fs)", secs);
  }
  timing = buf;
  std::printf("[%s] %2d. %s: %s%s\n", ok ? "PASS" : "FAIL", num, name.c_str(), detail.c_str(),
              timing.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

const PropertyResult* find_property(const SuiteResult& suite, const std::string& name) {
  for (const auto& p : suite.properties)
    if (p.name == name) return &p;
  return nullptr;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// max over trajectory states of d_S(x_k)/h, the bounded-violation statistic
double violation_ratio(const ConstraintSystem& sys, const Trajectory& traj) {
  double worst = 0.0;
  for (std::size_t k = 1; k < traj.states.size(); ++k) {
    double d = diff_norm(traj.states[k], project_exact(sys, traj.states[k], 1e-12, 1e-12));
    worst = std::max(worst, d);
  }
  return worst / traj.h();
}

std::vector<std::size_t> powers_of_two(unsigned lo, unsigned hi) {
  std::vector<std::size_t> out;
  for (unsigned e = lo; e <= hi; ++e) out.push_back(std::size_t{1} << e);
  return out;
}

}  // namespace

int main() {
  // 1 + 9: convergence order and accuracy-per-budget ordering on the slide
  StudySpec sliding_study;
  sliding_study.problem = ProblemSpec{SlidingProblem{}};
  sliding_study.schemes = {SchemeSpec{PBD{}}, SchemeSpec{Penalty{10.0}},
                           SchemeSpec{Penalty{100.0}}};
  sliding_study.step_counts = powers_of_two(6, 13);
  sliding_study.T = 4.0;
  sliding_study.reference = ReferenceKind::analytic;

  Timer t1;
  std::vector<ErrorRecord> slide_recs = run_study(sliding_study);
  double secs1 = t1.seconds();

  {
    std::vector<ErrorRecord> pbd;
    for (const auto& r : slide_recs)
      if (r.scheme == "pbd" && r.status == RunStatus::ok) pbd.push_back(r);
    bool ok = false;
    std::string detail = "too few usable runs";
    if (pbd.size() >= 3) {
      double slope = fit_order(pbd);
      ok = slope >= 0.8 && slope <= 1.2 && secs1 < 30.0;
      detail = "fitted order " + fmt(slope) + " in [0.8, 1.2] over n=2^6..2^13";
    }
    report(1, "sliding convergence order", ok, detail, secs1, 30.0);
  }

  {
    Timer t2;
    double alpha = kPi / 16.0;
    SlidingConstants consts = sliding_constants(alpha);
    auto [sys, x0] = sliding_system(3, 10.0, alpha);
    double worst_circle = 0.0, worst_feas = 0.0;
    const int samples = 10000;
    for (int i = 0; i < samples; ++i) {
      double t = 4.0 * i / (samples - 1);
      StateVector x = sliding_exact(consts, 3, t);
      if (t <= consts.t_exit)
        worst_circle = std::max(worst_circle, std::fabs(x[0] * x[0] + x[1] * x[1] - 1.0));
      worst_feas = std::max(worst_feas, max_constraint_distance(sys, x));
    }
    StateVector pre = sliding_exact(consts, 3, consts.t_exit);
    StateVector post = {1.0, -(consts.C1 + consts.t_exit), 0.0};
    double branch_gap = diff_norm(pre, post);
    double secs = t2.seconds();
    bool ok = worst_circle <= 1e-10 && worst_feas <= 1e-10 && branch_gap <= 1e-9 && secs < 1.0;
    report(2, "closed-form slide exactness", ok,
           "circle " + fmt(worst_circle) + ", feasibility " + fmt(worst_feas) + ", exit gap " +
               fmt(branch_gap) + " on 10^4 times",
           secs, 1.0);
  }

  {
    Timer t3;
    std::vector<std::size_t> ns = powers_of_two(6, 13);
    auto spread_for = [&](const ConstraintSystem& sys, const VectorField& f,
                          const StateVector& x0) {
      double lo = 1e300, hi = 0.0;
      for (std::size_t n : ns) {
        Trajectory traj = integrate(SchemeSpec{PBD{}}, sys, f, x0, 4.0, n);
        double r = violation_ratio(sys, traj);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      return hi / lo;
    };
    SlidingProblem sp;
    auto [ssys, sx0] = sliding_system(sp.d, sp.C, sp.alpha);
    double slide_spread = spread_for(ssys, sliding_force(sp.d), sx0);
    DisksProblem dp = disks_system(40, 0.1, 1);
    double disk_spread = spread_for(disks_constraints(dp), disks_force(dp.gamma), dp.x0);
    double secs = t3.seconds();
    bool ok = slide_spread < 3.0 && disk_spread < 3.0 && secs < 120.0;
    report(3, "bounded constraint violation", ok,
           "max/min of max_k d_S(x_k)/h: slide " + fmt(slide_spread) + ", disks " +
               fmt(disk_spread) + " (< 3)",
           secs, 120.0);
  }

  VerifyOptions defaults;

  Timer t45;
  SuiteResult lemmas = run_suite("lemmas", defaults);
  double secs45 = t45.seconds();
  {
    const PropertyResult* c = find_property(lemmas, "iterated-projection-contraction");
    bool ok = c && c->passed && c->violations == 0 && c->samples >= 1000 && c->worst <= 0.999 &&
              secs45 < 60.0;
    report(4, "iterated-projection contraction", ok,
           c ? "observed factor " + fmt(c->worst) + " <= 0.999 on " +
                   std::to_string(c->samples) + " configurations"
             : "property missing",
           secs45, 60.0);
  }
  {
    const PropertyResult* g = find_property(lemmas, "sweep-error-bounds");
    const PropertyResult* s = find_property(lemmas, "single-projection-error");
    bool ok = g && s && g->passed && s->passed && g->violations == 0 && s->violations == 0 &&
              g->samples >= 10000 && secs45 < 60.0;
    report(5, "per-sweep error lemmas", ok,
           (g && s) ? "zero violations on " + std::to_string(g->samples) + " traces (slack 1e-10)"
                    : "property missing",
           secs45, 60.0);
  }

  {
    Timer t6;
    SuiteResult geometry = run_suite("geometry", defaults);
    double secs = t6.seconds();
    const PropertyResult* h = find_property(geometry, "hypomonotonicity-pairwise");
    bool ok = h && h->passed && h->violations == 0 && h->samples >= 10000;
    report(6, "hypomonotone normal cones", ok,
           h ? "zero violations on " + std::to_string(h->samples) + " boundary pairs"
             : "property missing",
           secs, 0.0);
  }

  {
    Timer t7;
    SuiteResult calmness = run_suite("calmness", defaults);
    double secs = t7.seconds();
    const PropertyResult* m = find_property(calmness, "metric-calmness-bound");
    const PropertyResult* b = find_property(calmness, "feasible-point-branch-bounds");
    bool ok = m && b && m->passed && b->passed && m->violations == 0 && b->violations == 0 &&
              m->samples >= 1000 && m->worst >= 1.0 && secs < 60.0;
    report(7, "metric calmness with the conservative constant", ok,
           (m && b) ? "min margin " + fmt(m->worst) + "x over " + std::to_string(m->samples) +
                          " configurations; branch bounds clean"
                    : "property missing",
           secs, 60.0);
  }

  {
    StudySpec disks_study;
    disks_study.problem = ProblemSpec{DisksProblem{}};  // N=40, R=0.1, gamma=1, seed=1
    disks_study.schemes = {SchemeSpec{PBD{}}};
    disks_study.step_counts = powers_of_two(6, 12);
    disks_study.T = 4.0;
    disks_study.reference = ReferenceKind::pngs_reference;
    disks_study.reference_steps = std::size_t{1} << 16;

    Timer t8;
    std::vector<ErrorRecord> recs = run_study(disks_study);
    double secs = t8.seconds();
    bool all_ok = !recs.empty();
    int rising = 0;
    std::string errs;
    for (std::size_t k = 0; k < recs.size(); ++k) {
      all_ok = all_ok && recs[k].status == RunStatus::ok && std::isfinite(recs[k].sup_error);
      if (k > 0 && recs[k].sup_error > recs[k - 1].sup_error) ++rising;
      errs += (k ? " " : "") + fmt(recs[k].sup_error);
    }
    bool ok = all_ok && rising <= 1 && secs < 600.0;
    report(8, "disks error decreases against the reference", ok,
           "sup errors [" + errs + "], non-monotone pairs " + std::to_string(rising) + " (<= 1)",
           secs, 600.0);
  }

  {
    const ErrorRecord* pbd = nullptr;
    const ErrorRecord* pen10 = nullptr;
    const ErrorRecord* pen100 = nullptr;
    double finest_h = 4.0 / static_cast<double>(std::size_t{1} << 13);
    for (const auto& r : slide_recs) {
      if (r.h != finest_h) continue;
      if (r.scheme == "pbd") pbd = &r;
      if (r.scheme == "penalty(gamma=10)") pen10 = &r;
      if (r.scheme == "penalty(gamma=100)") pen100 = &r;
    }
    bool ok = pbd && pen10 && pen100 && pbd->status == RunStatus::ok &&
              (pbd->sup_error <= pen10->sup_error || pbd->sup_error <= pen100->sup_error);
    report(9, "accuracy per budget favors the one-sweep scheme", ok,
           (pbd && pen10 && pen100)
               ? "at n=2^13: pbd " + fmt(pbd->sup_error) + " vs penalty(10) " +
                     fmt(pen10->sup_error) + ", penalty(100) " + fmt(pen100->sup_error)
               : "records missing",
           0.0, 0.0);
  }

  {
    Timer t10;
    SuiteResult stability = run_suite("stability", defaults);
    double secs = t10.seconds();
    const PropertyResult* e = find_property(stability, "scheme-equivalence");
    bool ok = e && e->passed && e->violations == 0 && e->samples >= 100 && e->worst <= 1e-12;
    report(10, "single-constraint scheme equivalence", ok,
           e ? "max deviation " + fmt(e->worst) + " over " + std::to_string(e->samples) +
                   " random runs"
             : "property missing",
           secs, 0.0);
  }

  std::printf("acceptance: %d/10 criteria passed\n", 10 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
