// command-line front end for the constrained-dynamics workbench:
// trajectory experiments, convergence studies, and the property suites
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "proxflow/bench.hpp"
#include "proxflow/format.hpp"
#include "proxflow/intersection.hpp"
#include "proxflow/problems.hpp"
#include "proxflow/solvers.hpp"
#include "proxflow/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace proxflow;

namespace {

constexpr double kPi = 3.14159265358979323846;

// usage/validation problems exit 2, runtime failures exit 1
int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ContractViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ContractViolation("cannot read " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return text;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string text = "t";
  std::size_t dim = traj.states.empty() ? 0 : traj.states.front().size();
  for (std::size_t i = 1; i <= dim; ++i) text += ",x" + std::to_string(i);
  text += "\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    text += format_double(traj.times[k]);
    for (double v : traj.states[k]) {
      text += ',';
      text += format_double(v);
    }
    text += '\n';
  }
  return text;
}

double mean_work(const Trajectory& traj) {
  if (traj.work.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t w : traj.work) total += static_cast<double>(w);
  return total / static_cast<double>(traj.work.size());
}

// shared scheme selection flags; penalty strength has its own flag since
// --gamma already names the disks' attraction
struct SchemeFlags {
  std::string name = "pbd";
  double abstol = 1e-9;
  double reltol = 1e-9;
  double penalty_gamma = 10.0;

  SchemeSpec build() const {
    if (name == "pbd") return PBD{};
    if (name == "moreau") return MoreauEuler{abstol, reltol};
    if (name == "pngs") return PNGS{abstol, reltol};
    if (name == "pgs") return PGS{abstol, reltol};
    return Penalty{penalty_gamma};
  }
};

void add_scheme_flags(CLI::App* cmd, SchemeFlags& f) {
  cmd->add_option("--scheme", f.name, "integration scheme")
      ->check(CLI::IsMember({"pbd", "moreau", "pngs", "pgs", "penalty"}))
      ->capture_default_str();
  cmd->add_option("--abstol", f.abstol, "absolute stopping tolerance of the iterative schemes")
      ->capture_default_str();
  cmd->add_option("--reltol", f.reltol, "relative stopping tolerance of the iterative schemes")
      ->capture_default_str();
  cmd->add_option("--penalty-gamma", f.penalty_gamma, "restoring-force strength of scheme=penalty")
      ->capture_default_str();
}

int cmd_sliding(const SlidingProblem& p, double T, std::size_t n, const SchemeSpec& scheme,
                const fs::path& out) {
  if (n == 0) throw ContractViolation("step count must be positive");
  auto [sys, x0] = sliding_system(p.d, p.C, p.alpha);
  Trajectory traj = integrate(scheme, sys, sliding_force(p.d), x0, T, n);
  double err = sup_error(traj, sliding_truth(p), 10 * n);

  fs::create_directories(out);
  write_file(out / "problem.json", problem_to_json(p));
  write_file(out / "trajectory.csv", trajectory_csv(traj));

  ordered_json s;
  s["problem"] = "sliding";
  s["scheme"] = scheme_label(scheme);
  s["d"] = p.d;
  s["C"] = p.C;
  s["alpha"] = p.alpha;
  s["T"] = T;
  s["n"] = n;
  s["h"] = T / static_cast<double>(n);
  if (p.alpha < kPi / 2.0) s["t_exit"] = sliding_constants(p.alpha).t_exit;
  s["sup_error_vs_exact"] = err;
  s["avg_work"] = mean_work(traj);
  s["final_max_violation"] = max_constraint_distance(sys, traj.states.back());
  s["final_state"] = traj.states.back();
  write_file(out / "summary.json", s.dump(2) + "\n");

  std::cout << "sliding: scheme=" << scheme_label(scheme) << " n=" << n
            << " sup_error_vs_exact=" << format_double(err) << "\n"
            << "wrote " << (out / "trajectory.csv").string() << ", summary.json, problem.json\n";
  return 0;
}

int cmd_disks(std::size_t N, double R, double gamma, double T, std::size_t n,
              const SchemeSpec& scheme, std::uint64_t seed, const fs::path& out) {
  if (n == 0) throw ContractViolation("step count must be positive");
  DisksProblem p = disks_system(N, R, seed);
  p.gamma = gamma;
  ConstraintSystem sys = disks_constraints(p);
  Trajectory traj = integrate(scheme, sys, disks_force(p.gamma), p.x0, T, n);

  const StateVector& last = traj.states.back();
  double min_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) {
      double dx = last[2 * i] - last[2 * j], dy = last[2 * i + 1] - last[2 * j + 1];
      min_dist = std::min(min_dist, std::sqrt(dx * dx + dy * dy));
    }

  fs::create_directories(out);
  write_file(out / "problem.json", problem_to_json(p));
  write_file(out / "trajectory.csv", trajectory_csv(traj));

  ordered_json s;
  s["problem"] = "disks";
  s["scheme"] = scheme_label(scheme);
  s["N"] = N;
  s["R"] = R;
  s["gamma"] = gamma;
  s["seed"] = seed;
  s["T"] = T;
  s["n"] = n;
  s["h"] = T / static_cast<double>(n);
  s["avg_work"] = mean_work(traj);
  s["final_max_violation"] = max_constraint_distance(sys, last);
  s["final_min_pair_distance"] = min_dist;
  write_file(out / "summary.json", s.dump(2) + "\n");

  std::cout << "disks: scheme=" << scheme_label(scheme) << " n=" << n
            << " final_max_violation=" << format_double(max_constraint_distance(sys, last)) << "\n"
            << "wrote " << (out / "trajectory.csv").string() << ", summary.json, problem.json\n";
  return 0;
}

std::string plot_script(const std::vector<std::string>& schemes) {
  std::string list;
  for (const auto& s : schemes) {
    if (!list.empty()) list += ' ';
    list += s;
  }
  std::string gp;
  gp += "# renders records.csv; run from this directory: gnuplot plot.gp\n";
  gp += "set datafile separator ','\n";
  gp += "set logscale xy\nset grid\nset key outside\n";
  gp += "schemes = \"" + list + "\"\n";
  gp += "set terminal pngcairo size 960,640\n";
  gp += "set xlabel 'step size h'\nset ylabel 'sup error'\n";
  gp += "set output 'error_vs_h.png'\n";
  gp +=
      "plot for [i=1:words(schemes)] 'records.csv' every ::1 "
      "using (strcol(1) eq word(schemes, i) ? $2 : NaN):3 with linespoints pt 7 "
      "title word(schemes, i)\n";
  gp += "set xlabel 'average constraint treatments per step'\n";
  gp += "set output 'work_precision.png'\n";
  gp +=
      "plot for [i=1:words(schemes)] 'records.csv' every ::1 "
      "using (strcol(1) eq word(schemes, i) ? $4 : NaN):3 with linespoints pt 7 "
      "title word(schemes, i)\n";
  return gp;
}

int cmd_study(const fs::path& spec_path, const fs::path& out) {
  std::string text = read_file(spec_path);
  auto loader = [&spec_path](const std::string& rel) {
    return read_file(spec_path.parent_path() / rel);
  };
  StudySpec spec = study_from_json(text, loader);
  std::vector<ErrorRecord> records = run_study(spec);

  fs::create_directories(out);
  emit_csv(records, (out / "records.csv").string());

  std::vector<std::string> labels;
  for (const auto& s : spec.schemes) labels.push_back(scheme_label(s));

  ordered_json orders;
  for (const auto& label : labels) {
    std::vector<ErrorRecord> own;
    for (const auto& r : records)
      if (r.scheme == label) own.push_back(r);
    try {
      orders[label] = fit_order(own);
    } catch (const ContractViolation&) {
      orders[label] = nullptr;  // too few usable cells to fit a slope
    }
  }
  write_file(out / "orders.json", orders.dump(2) + "\n");
  write_file(out / "plot.gp", plot_script(labels));

  for (const auto& r : records)
    std::cout << r.scheme << " h=" << format_double(r.h)
              << " sup_error=" << format_double(r.sup_error)
              << " avg_work=" << format_double(r.avg_work) << " " << status_label(r.status)
              << "\n";
  std::cout << "fitted orders: " << orders.dump() << "\n"
            << "wrote " << (out / "records.csv").string() << ", orders.json, plot.gp\n";
  return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, bool inject, const fs::path& out) {
  VerifyOptions opts;
  opts.seed = seed;
  opts.inject_violation = inject;

  std::vector<std::string> wanted;
  if (suite == "all")
    wanted = suite_names();
  else
    wanted.push_back(suite);

  ordered_json doc;
  bool all_passed = true;
  std::vector<std::string> failing;
  for (const auto& name : wanted) {
    SuiteResult r = run_suite(name, opts);
    ordered_json props = ordered_json::array();
    for (const auto& p : r.properties) {
      std::cout << (p.passed ? "[PASS] " : "[FAIL] ") << name << "/" << p.name
                << " samples=" << p.samples << " violations=" << p.violations
                << " worst=" << format_double(p.worst) << "\n";
      ordered_json pj;
      pj["name"] = p.name;
      pj["samples"] = p.samples;
      pj["violations"] = p.violations;
      pj["worst"] = p.worst;
      pj["note"] = p.note;
      pj["passed"] = p.passed;
      props.push_back(pj);
      if (!p.passed) failing.push_back(name + "/" + p.name);
    }
    doc[name] = {{"passed", r.passed}, {"properties", props}};
    all_passed = all_passed && r.passed;
  }

  fs::create_directories(out);
  write_file(out / "verify.json", doc.dump(2) + "\n");
  std::cout << "wrote " << (out / "verify.json").string() << "\n";
  if (!all_passed) {
    std::cerr << "failing properties:";
    for (const auto& f : failing) std::cerr << " " << f;
    std::cerr << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"first-order constrained dynamics: experiments, studies, property suites"};
  app.set_version_flag("--version", "0.1.0");
  app.require_subcommand(1);
  app.footer("PROXFLOW_THREADS caps study parallelism.");

  SlidingProblem sp;
  double s_T = 4.0;
  std::size_t s_n = 1024;
  SchemeFlags s_scheme;
  std::string s_out = "out";
  auto* sliding = app.add_subcommand("sliding", "rim slide under constant force vs closed form");
  sliding->add_option("--C", sp.C, "sphere-center offset")->capture_default_str();
  sliding->add_option("--d", sp.d, "state dimension (>= 3)")->capture_default_str();
  sliding->add_option("--alpha", sp.alpha, "initial angle in (0, pi)")->capture_default_str();
  sliding->add_option("--T", s_T, "time horizon")->capture_default_str();
  sliding->add_option("--n", s_n, "number of steps")->capture_default_str();
  add_scheme_flags(sliding, s_scheme);
  sliding->add_option("--out", s_out, "output directory")->capture_default_str();

  std::size_t d_N = 40;
  double d_R = 0.1, d_gamma = 1.0, d_T = 4.0;
  std::size_t d_n = 1024;
  std::uint64_t d_seed = 1;
  SchemeFlags d_scheme;
  std::string d_out = "out";
  auto* disks = app.add_subcommand("disks", "non-overlapping disks drawn toward the origin");
  disks->add_option("--N", d_N, "number of disks (>= 2)")->capture_default_str();
  disks->add_option("--R", d_R, "disk radius")->capture_default_str();
  disks->add_option("--gamma", d_gamma, "attraction strength")->capture_default_str();
  disks->add_option("--T", d_T, "time horizon")->capture_default_str();
  disks->add_option("--n", d_n, "number of steps")->capture_default_str();
  disks->add_option("--seed", d_seed, "placement seed")->capture_default_str();
  add_scheme_flags(disks, d_scheme);
  disks->add_option("--out", d_out, "output directory")->capture_default_str();

  std::string st_spec;
  std::string st_out = "out";
  auto* study = app.add_subcommand("study", "run a convergence/work study from a JSON spec");
  study->add_option("spec", st_spec, "study spec JSON file")->required();
  study->add_option("--out", st_out, "output directory")->capture_default_str();

  std::string v_suite = "all";
  std::uint64_t v_seed = VerifyOptions{}.seed;
  bool v_inject = false;
  std::string v_out = "out";
  auto* verify = app.add_subcommand("verify", "run randomized property suites");
  verify->add_option("--suite", v_suite, "geometry|lemmas|calmness|stability|all")
      ->capture_default_str();
  verify->add_option("--seed", v_seed, "base seed of the samplers")->capture_default_str();
  verify->add_flag("--inject-violation", v_inject)->group("");  // failure-path debug hook
  verify->add_option("--out", v_out, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*sliding)
    return guarded([&] { return cmd_sliding(sp, s_T, s_n, s_scheme.build(), s_out); });
  if (*disks)
    return guarded([&] {
      return cmd_disks(d_N, d_R, d_gamma, d_T, d_n, d_scheme.build(), d_seed, d_out);
    });
  if (*study) return guarded([&] { return cmd_study(st_spec, st_out); });
  return guarded([&] { return cmd_verify(v_suite, v_seed, v_inject, v_out); });
}
