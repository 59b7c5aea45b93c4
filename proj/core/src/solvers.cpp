#include "proxflow/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "proxflow/format.hpp"

namespace proxflow {

namespace {

StateVector eval_field(const VectorField& f, const StateVector& x) {
  StateVector g = f.eval(x);
  if (g.size() != x.size())
    throw ContractViolation("vector field returned " + std::to_string(g.size()) +
                            " components for a state of dimension " + std::to_string(x.size()));
  return g;
}

StateVector drift_point(const VectorField& f, double h, const StateVector& x) {
  StateVector d = x;
  add_scaled(d, h, eval_field(f, x));
  return d;
}

void require_step(double h) {
  if (!(h > 0.0)) throw ContractViolation("step size must be positive");
}

}  // namespace

void validate_scheme(const SchemeSpec& s) {
  auto check_tols = [](double abstol, double reltol) {
    if (!(abstol > 0.0) || !(reltol > 0.0))
      throw ContractViolation("scheme tolerances must be positive");
  };
  if (const auto* m = std::get_if<MoreauEuler>(&s)) check_tols(m->abstol, m->reltol);
  if (const auto* m = std::get_if<PNGS>(&s)) check_tols(m->abstol, m->reltol);
  if (const auto* m = std::get_if<PGS>(&s)) check_tols(m->abstol, m->reltol);
  if (const auto* p = std::get_if<Penalty>(&s)) {
    if (!(p->gamma > 0.0)) throw ContractViolation("penalty strength must be positive");
  }
}

std::string scheme_label(const SchemeSpec& s) {
  if (std::holds_alternative<PBD>(s)) return "pbd";
  if (std::holds_alternative<MoreauEuler>(s)) return "moreau";
  if (std::holds_alternative<PNGS>(s)) return "pngs";
  if (std::holds_alternative<PGS>(s)) return "pgs";
  return "penalty(gamma=" + format_double(std::get<Penalty>(s).gamma) + ")";
}

StepResult step_pbd(const ConstraintSystem& sys, const VectorField& f, double h,
                    const StateVector& x) {
  require_step(h);
  StateVector y = drift_point(f, h, x);
  sweep_inplace(sys, y);
  return {std::move(y), sys.size()};
}

StepResult step_moreau(const ConstraintSystem& sys, const VectorField& f, double h,
                       const StateVector& x, double abstol, double reltol) {
  require_step(h);
  ProjectionResult r = project_exact_info(sys, drift_point(f, h, x), abstol, reltol);
  return {std::move(r.point), sys.size() * r.sweeps};
}

StepResult step_pngs(const ConstraintSystem& sys, const VectorField& f, double h,
                     const StateVector& x, double abstol, double reltol) {
  return step_moreau(sys, f, h, x, abstol, reltol);
}

StepResult step_pgs(const ConstraintSystem& sys, const VectorField& f, double h,
                    const StateVector& x, double abstol, double reltol) {
  require_step(h);
  if (!(abstol > 0.0) || !(reltol > 0.0))
    throw ContractViolation("scheme tolerances must be positive");
  StateVector drift = drift_point(f, h, x);
  std::size_t work = sys.size();

  // Half-space linearization of each violated constraint at the drift point:
  // { y : <n_j, y> <= <n_j, drift> - d_j } with n_j the unit outward normal.
  std::vector<StateVector> normals;
  std::vector<double> bounds;
  for (const auto& c : sys.constraints) {
    double d = distance(c, drift);
    if (d == 0.0) continue;
    StateVector n = proximal_normal(c, drift);
    double len = norm(n);
    for (auto& t : n) t /= len;
    normals.push_back(std::move(n));
    bounds.push_back(dot(normals.back(), drift) - d);
  }
  if (normals.empty()) return {std::move(drift), work};

  StateVector y = drift;
  StateVector next;
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t s = 1; s <= kDefaultMaxSweeps; ++s) {
    next = y;
    for (std::size_t j = 0; j < normals.size(); ++j) {
      double slack = dot(normals[j], next) - bounds[j];
      if (slack > 0.0) add_scaled(next, -slack, normals[j]);
    }
    work += normals.size();
    residual = diff_norm(next, y);
    if (residual <= abstol + norm(y) * reltol) return {std::move(y), work};
    y.swap(next);
  }
  throw NoConvergence("linearized sweeps did not meet the stopping criterion within " +
                          std::to_string(kDefaultMaxSweeps) + " passes",
                      std::move(y), residual);
}

StepResult step_penalty(const ConstraintSystem& sys, const VectorField& f, double h,
                        const StateVector& x, double gamma) {
  require_step(h);
  if (!(gamma > 0.0)) throw ContractViolation("penalty strength must be positive");
  StateVector force = eval_field(f, x);
  // d_j * grad d_j equals the proximal normal itself: the gradient is the
  // unit vector from the projection to x, and its length cancels d_j.
  for (const auto& c : sys.constraints) {
    StateVector y = x;
    if (project_inplace(c, y)) add_scaled(force, -gamma, sub(x, y));
  }
  StateVector out = x;
  add_scaled(out, h, force);
  return {std::move(out), sys.size()};
}

StepResult step(const SchemeSpec& scheme, const ConstraintSystem& sys, const VectorField& f,
                double h, const StateVector& x) {
  if (std::holds_alternative<PBD>(scheme)) return step_pbd(sys, f, h, x);
  if (const auto* m = std::get_if<MoreauEuler>(&scheme))
    return step_moreau(sys, f, h, x, m->abstol, m->reltol);
  if (const auto* m = std::get_if<PNGS>(&scheme))
    return step_pngs(sys, f, h, x, m->abstol, m->reltol);
  if (const auto* m = std::get_if<PGS>(&scheme))
    return step_pgs(sys, f, h, x, m->abstol, m->reltol);
  return step_penalty(sys, f, h, x, std::get<Penalty>(scheme).gamma);
}

Trajectory integrate(const SchemeSpec& scheme, const ConstraintSystem& sys, const VectorField& f,
                     const StateVector& x0, double T, std::size_t n) {
  validate_scheme(scheme);
  if (!(T > 0.0)) throw ContractViolation("horizon must be positive");
  if (n < 1) throw ContractViolation("need at least one step");
  if (x0.size() != sys.state_dim)
    throw ContractViolation("initial state length does not match the system dimension");

  double d0;
  try {
    d0 = diff_norm(x0, project_exact(sys, x0, 1e-12, 1e-15, 10000));
  } catch (const NoConvergence&) {
    throw ContractViolation("initial state feasibility could not be certified");
  }
  if (d0 > 1e-10)
    throw ContractViolation("initial state is infeasible (distance " + std::to_string(d0) + ")");

  double h = T / static_cast<double>(n);
  Trajectory traj;
  traj.scheme = scheme;
  traj.times.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) traj.times[k] = static_cast<double>(k) * h;
  traj.states.reserve(n + 1);
  traj.work.reserve(n);
  traj.states.push_back(x0);
  for (std::size_t k = 0; k < n; ++k) {
    try {
      StepResult r = step(scheme, sys, f, h, traj.states.back());
      traj.states.push_back(std::move(r.x));
      traj.work.push_back(r.work);
    } catch (const ContractViolation& e) {
      throw IntegrationError(e.what(), k);
    } catch (const NoConvergence& e) {
      throw IntegrationError(e.what(), k);
    }
  }
  return traj;
}

StateVector interpolate(const Trajectory& traj, double t) {
  if (traj.times.empty()) throw ContractViolation("cannot interpolate an empty trajectory");
  if (!(t >= traj.times.front() && t <= traj.times.back()))
    throw ContractViolation("interpolation time outside the trajectory range");
  if (traj.times.size() == 1) return traj.states[0];
  auto it = std::upper_bound(traj.times.begin(), traj.times.end(), t);
  std::size_t k = it == traj.times.end()
                      ? traj.times.size() - 2
                      : static_cast<std::size_t>(it - traj.times.begin()) - 1;
  if (t == traj.times[k]) return traj.states[k];
  if (t == traj.times[k + 1]) return traj.states[k + 1];
  double theta = (t - traj.times[k]) / (traj.times[k + 1] - traj.times[k]);
  const StateVector& a = traj.states[k];
  const StateVector& b = traj.states[k + 1];
  StateVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (1.0 - theta) * a[i] + theta * b[i];
  return r;
}

}  // namespace proxflow
