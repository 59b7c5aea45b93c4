#include "proxflow/problems.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace proxflow {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kPi = 3.14159265358979323846;

// uniform in [0,1) from the raw engine output, identical across platforms
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

SlidingConstants sliding_constants(double alpha) {
  if (!(alpha > 0.0 && alpha < kPi / 2.0))
    throw ContractViolation("initial angle must lie in (0, pi/2) for a sliding phase to exist");
  double c = std::cos(alpha);
  double C1 = 0.5 * std::log((1.0 - c) / (1.0 + c));
  double C2 = std::sin(alpha) * (std::exp(2.0 * C1) + 1.0);
  return SlidingConstants{C1, C2, -C1};
}

std::pair<ConstraintSystem, StateVector> sliding_system(std::size_t d, double C, double alpha) {
  if (d < 3) throw ContractViolation("sliding problem needs dimension at least 3");
  if (!(C > 0.0)) throw ContractViolation("sphere-center offset must be positive");
  if (!(alpha > 0.0 && alpha < kPi))
    throw ContractViolation("initial angle must lie in the open interval (0, pi)");
  double R = std::sqrt(1.0 + C * C);

  // d-2 spheres centered C*e_{j+2}, plus one centered at the mirrored average
  // -C/sqrt(d-2) * (e_3 + ... + e_d). The state is kept outside all of them;
  // the boundaries meet exactly on the unit circle of the (e1,e2)-plane.
  std::vector<ConstraintDescriptor> cs;
  cs.reserve(d - 1);
  for (std::size_t j = 0; j < d - 2; ++j) {
    StateVector center(d, 0.0);
    center[j + 2] = C;
    cs.push_back(BallComplement{std::move(center), R});
  }
  StateVector last(d, 0.0);
  double off = -C / std::sqrt(static_cast<double>(d - 2));
  for (std::size_t k = 2; k < d; ++k) last[k] = off;
  cs.push_back(BallComplement{std::move(last), R});

  StateVector x0(d, 0.0);
  x0[0] = std::sin(alpha);
  x0[1] = std::cos(alpha);
  return {make_system(std::move(cs)), std::move(x0)};
}

VectorField sliding_force(std::size_t d) {
  return VectorField{[d](const StateVector&) {
                       StateVector g(d, 0.0);
                       g[1] = -1.0;
                       return g;
                     },
                     0.0, 1.0};
}

StateVector sliding_exact(const SlidingConstants& consts, std::size_t d, double t) {
  if (!(t >= 0.0)) throw ContractViolation("closed-form solution defined for t >= 0");
  StateVector x(d, 0.0);
  if (t <= consts.t_exit) {
    double e2 = std::exp(2.0 * (consts.C1 + t));
    x[0] = consts.C2 * std::exp(t) / (1.0 + e2);
    x[1] = (1.0 - e2) / (1.0 + e2);
  } else {
    x[0] = 1.0;
    x[1] = -(consts.C1 + t);
  }
  return x;
}

std::function<StateVector(double)> sliding_truth(const SlidingProblem& p) {
  if (p.alpha < kPi / 2.0) {  // non-positive angles rejected by sliding_constants
    SlidingConstants consts = sliding_constants(p.alpha);
    std::size_t d = p.d;
    return [consts, d](double t) { return sliding_exact(consts, d, t); };
  }
  // at or below the equator gravity already points into the feasible side
  StateVector x0 = sliding_system(p.d, p.C, p.alpha).second;
  return [x0 = std::move(x0)](double t) {
    StateVector x = x0;
    x[1] -= t;
    return x;
  };
}

DisksProblem disks_system(std::size_t N, double R, std::uint64_t seed) {
  if (N < 2) throw ContractViolation("need at least two disks");
  if (!(R > 0.0)) throw ContractViolation("disk radius must be positive");

  double side = 4.0 * R * std::sqrt(static_cast<double>(N));
  double lo = -(side / 2.0 - R), hi = side / 2.0 - R;
  std::mt19937_64 rng(seed);

  StateVector x0;
  x0.reserve(2 * N);
  std::size_t attempts = 0;
  const std::size_t max_attempts = 1000000;
  for (std::size_t i = 0; i < N; ++i) {
    for (;;) {
      if (++attempts > max_attempts)
        throw std::runtime_error("disk placement failed after 1000000 attempts; use fewer disks "
                                 "or a larger box");
      double px = lo + unit_uniform(rng) * (hi - lo);
      double py = lo + unit_uniform(rng) * (hi - lo);
      bool ok = true;
      for (std::size_t k = 0; k < i; ++k) {
        double dx = px - x0[2 * k], dy = py - x0[2 * k + 1];
        if (dx * dx + dy * dy < 4.0 * R * R) {
          ok = false;
          break;
        }
      }
      if (ok) {
        x0.push_back(px);
        x0.push_back(py);
        break;
      }
    }
  }

  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) {
      double dx = x0[2 * i] - x0[2 * j], dy = x0[2 * i + 1] - x0[2 * j + 1];
      if (std::sqrt(dx * dx + dy * dy) < 2.0 * R - 1e-12)
        throw std::logic_error("internal: sampled disk placement is infeasible");
    }

  return DisksProblem{N, R, 1.0, seed, std::move(x0)};
}

ConstraintSystem disks_constraints(const DisksProblem& p) {
  if (p.N < 2) throw ContractViolation("need at least two disks");
  std::vector<ConstraintDescriptor> cs;
  cs.reserve(p.N * (p.N - 1) / 2);
  for (std::size_t i = 0; i < p.N; ++i)
    for (std::size_t j = i + 1; j < p.N; ++j)
      cs.push_back(PairwiseDistance{i, j, 2, 2.0 * p.R});
  return make_system(std::move(cs), 2 * p.N);
}

VectorField disks_force(double gamma) {
  return VectorField{[gamma](const StateVector& x) {
                       StateVector g(x.size());
                       for (std::size_t k = 0; k < x.size(); ++k) g[k] = -gamma * x[k];
                       return g;
                     },
                     gamma, std::nullopt};
}

Trajectory reference_trajectory(const DisksProblem& p, double T, std::size_t n_ref) {
  if (!(T > 0.0)) throw ContractViolation("horizon must be positive");
  if (static_cast<double>(n_ref) < 1e4)
    throw ContractViolation("reference step too coarse: need h_ref <= 1e-4 * T");
  DisksProblem filled = p;
  if (filled.x0.empty()) filled.x0 = disks_system(p.N, p.R, p.seed).x0;
  return integrate(PNGS{1e-12, 1e-10}, disks_constraints(filled), disks_force(filled.gamma),
                   filled.x0, T, n_ref);
}

BuiltProblem build_problem(const ProblemSpec& p) {
  if (const auto* s = std::get_if<SlidingProblem>(&p)) {
    auto [sys, x0] = sliding_system(s->d, s->C, s->alpha);
    return BuiltProblem{std::move(sys), std::move(x0), sliding_force(s->d)};
  }
  DisksProblem dp = std::get<DisksProblem>(p);
  if (dp.x0.empty()) dp.x0 = disks_system(dp.N, dp.R, dp.seed).x0;
  return BuiltProblem{disks_constraints(dp), dp.x0, disks_force(dp.gamma)};
}

std::string problem_to_json(const ProblemSpec& p) {
  ordered_json j;
  if (const auto* s = std::get_if<SlidingProblem>(&p)) {
    j["kind"] = "sliding";
    j["d"] = s->d;
    j["C"] = s->C;
    j["alpha"] = s->alpha;
    j["seed"] = 0;
    j["x0"] = sliding_system(s->d, s->C, s->alpha).second;
  } else {
    const auto& dp = std::get<DisksProblem>(p);
    j["kind"] = "disks";
    j["N"] = dp.N;
    j["R"] = dp.R;
    j["gamma"] = dp.gamma;
    j["seed"] = dp.seed;
    j["x0"] = dp.x0;
  }
  return j.dump(2) + "\n";
}

ProblemSpec problem_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ContractViolation(std::string("problem document is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ContractViolation("problem document needs a string field 'kind'");
  std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "sliding") {
      SlidingProblem s;
      s.d = j.at("d").get<std::size_t>();
      s.C = j.at("C").get<double>();
      s.alpha = j.at("alpha").get<double>();
      sliding_system(s.d, s.C, s.alpha);  // validates
      return s;
    }
    if (kind == "disks") {
      DisksProblem dp;
      dp.N = j.at("N").get<std::size_t>();
      dp.R = j.at("R").get<double>();
      dp.gamma = j.at("gamma").get<double>();
      dp.seed = j.at("seed").get<std::uint64_t>();
      if (j.contains("x0")) {
        dp.x0 = j["x0"].get<StateVector>();
        if (dp.x0.size() != 2 * dp.N)
          throw ContractViolation("x0 length does not match 2N");
        for (std::size_t i = 0; i < dp.N; ++i)
          for (std::size_t k = i + 1; k < dp.N; ++k) {
            double dx = dp.x0[2 * i] - dp.x0[2 * k], dy = dp.x0[2 * i + 1] - dp.x0[2 * k + 1];
            if (std::sqrt(dx * dx + dy * dy) < 2.0 * dp.R - 1e-12)
              throw ContractViolation("stored x0 has overlapping disks");
          }
      } else {
        dp.x0 = disks_system(dp.N, dp.R, dp.seed).x0;
      }
      if (!(dp.gamma >= 0.0)) throw ContractViolation("gamma must be non-negative");
      return dp;
    }
  } catch (const ordered_json::exception& e) {
    throw ContractViolation(std::string("problem document field error: ") + e.what());
  }
  throw ContractViolation("unknown problem kind '" + kind + "'");
}

}  // namespace proxflow
