#include "proxflow/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "proxflow/format.hpp"

namespace proxflow {

namespace {

constexpr double kDivergenceNorm = 1e6;

std::size_t thread_budget(std::size_t cells) {
  std::size_t hw = std::max<unsigned>(1, std::thread::hardware_concurrency());
  std::size_t cap = hw;
  if (const char* env = std::getenv("PROXFLOW_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v >= 1) cap = static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::min({hw, cap, cells}));
}

double max_state_norm(const Trajectory& traj) {
  double m = 0.0;
  for (const auto& s : traj.states) m = std::max(m, norm(s));
  return m;
}

}  // namespace

const char* status_label(RunStatus s) {
  switch (s) {
    case RunStatus::ok: return "ok";
    case RunStatus::diverged: return "diverged";
    default: return "failed";
  }
}

void validate_study(const StudySpec& spec) {
  if (spec.schemes.empty()) throw ContractViolation("study needs at least one scheme");
  for (const auto& s : spec.schemes) validate_scheme(s);
  if (spec.step_counts.empty()) throw ContractViolation("study needs at least one step count");
  for (std::size_t k = 0; k < spec.step_counts.size(); ++k) {
    if (spec.step_counts[k] == 0) throw ContractViolation("step counts must be positive");
    if (k > 0 && spec.step_counts[k] <= spec.step_counts[k - 1])
      throw ContractViolation("step counts must be strictly increasing");
  }
  if (!(spec.T > 0.0)) throw ContractViolation("study horizon must be positive");
  if (spec.reference == ReferenceKind::analytic &&
      !std::holds_alternative<SlidingProblem>(spec.problem))
    throw ContractViolation("analytic reference exists only for the sliding problem");
  if (spec.samples_per_segment == 0)
    throw ContractViolation("need at least one error sample per segment");
}

double sup_error(const Trajectory& traj, const std::function<StateVector(double)>& truth,
                 std::size_t n_samples) {
  if (n_samples < traj.times.size())
    throw ContractViolation("error grid must be at least as fine as the trajectory nodes");
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.times.size(); ++k)
    worst = std::max(worst, diff_norm(traj.states[k], truth(traj.times[k])));
  double T = traj.times.back();
  double step = T / static_cast<double>(n_samples);
  for (std::size_t i = 1; i < n_samples; ++i) {
    double t = std::min(static_cast<double>(i) * step, T);
    worst = std::max(worst, diff_norm(interpolate(traj, t), truth(t)));
  }
  return worst;
}

std::vector<ErrorRecord> run_study(const StudySpec& spec) {
  validate_study(spec);
  BuiltProblem built = build_problem(spec.problem);

  std::function<StateVector(double)> truth;
  Trajectory reference;
  if (spec.reference == ReferenceKind::analytic) {
    truth = sliding_truth(std::get<SlidingProblem>(spec.problem));
  } else {
    if (const auto* dp = std::get_if<DisksProblem>(&spec.problem)) {
      reference = reference_trajectory(*dp, spec.T, spec.reference_steps);
    } else {
      reference = integrate(PNGS{1e-12, 1e-10}, built.system, built.force, built.x0, spec.T,
                            spec.reference_steps);
    }
    const Trajectory& ref = reference;
    truth = [&ref](double t) { return interpolate(ref, t); };
  }

  std::size_t cells = spec.schemes.size() * spec.step_counts.size();
  std::vector<ErrorRecord> records(cells);
  std::atomic<std::size_t> cursor{0};

  auto worker = [&]() {
    for (;;) {
      std::size_t cell = cursor.fetch_add(1);
      if (cell >= cells) return;
      const SchemeSpec& scheme = spec.schemes[cell / spec.step_counts.size()];
      std::size_t n = spec.step_counts[cell % spec.step_counts.size()];
      ErrorRecord rec;
      rec.scheme = scheme_label(scheme);
      rec.h = spec.T / static_cast<double>(n);
      auto t0 = std::chrono::steady_clock::now();
      try {
        Trajectory traj = integrate(scheme, built.system, built.force, built.x0, spec.T, n);
        rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                              .count();
        double total_work = 0.0;
        for (std::size_t w : traj.work) total_work += static_cast<double>(w);
        rec.avg_work = total_work / static_cast<double>(n);
        rec.sup_error = sup_error(traj, truth, spec.samples_per_segment * n);
        rec.status = (std::isfinite(rec.sup_error) && max_state_norm(traj) <= kDivergenceNorm)
                         ? RunStatus::ok
                         : RunStatus::diverged;
      } catch (const std::exception&) {
        rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                              .count();
        rec.sup_error = std::numeric_limits<double>::quiet_NaN();
        rec.avg_work = 0.0;
        rec.status = RunStatus::failed;
      }
      records[cell] = std::move(rec);
    }
  };

  std::size_t pool = thread_budget(cells);
  if (pool <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(pool);
    for (std::size_t t = 0; t < pool; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  return records;
}

double fit_order(const std::vector<ErrorRecord>& records) {
  std::vector<double> xs, ys;
  for (const auto& r : records) {
    if (r.status != RunStatus::ok) continue;
    if (!(r.sup_error > 0.0) || !std::isfinite(r.sup_error) || !(r.h > 0.0)) continue;
    xs.push_back(std::log(r.h));
    ys.push_back(std::log(r.sup_error));
  }
  std::vector<double> distinct = xs;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3)
    throw ContractViolation("order fit needs at least 3 valid records with distinct step sizes");
  double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sx += xs[k];
    sy += ys[k];
    sxx += xs[k] * xs[k];
    sxy += xs[k] * ys[k];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::string records_to_csv(const std::vector<ErrorRecord>& records) {
  std::string out = "scheme,h,sup_error,avg_work,wall_time_s,status\n";
  for (const auto& r : records) {
    out += r.scheme;
    out += ',';
    out += format_double(r.h);
    out += ',';
    out += format_double(r.sup_error);
    out += ',';
    out += format_double(r.avg_work);
    out += ',';
    out += format_double(r.wall_time_s);
    out += ',';
    out += status_label(r.status);
    out += '\n';
  }
  return out;
}

void emit_csv(const std::vector<ErrorRecord>& records, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << records_to_csv(records);
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

std::vector<ErrorRecord> records_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "scheme,h,sup_error,avg_work,wall_time_s,status")
    throw ContractViolation("unrecognized CSV header");
  std::vector<ErrorRecord> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    for (;;) {
      std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos) {
        fields.push_back(line.substr(pos));
        break;
      }
      fields.push_back(line.substr(pos, comma - pos));
      pos = comma + 1;
    }
    if (fields.size() != 6)
      throw ContractViolation("CSV line " + std::to_string(lineno) + " has " +
                              std::to_string(fields.size()) + " fields, expected 6");
    ErrorRecord r;
    r.scheme = fields[0];
    bool ok = parse_double(fields[1], r.h) && parse_double(fields[2], r.sup_error) &&
              parse_double(fields[3], r.avg_work) && parse_double(fields[4], r.wall_time_s);
    if (!ok)
      throw ContractViolation("CSV line " + std::to_string(lineno) + " has a malformed number");
    if (fields[5] == "ok")
      r.status = RunStatus::ok;
    else if (fields[5] == "diverged")
      r.status = RunStatus::diverged;
    else if (fields[5] == "failed")
      r.status = RunStatus::failed;
    else
      throw ContractViolation("CSV line " + std::to_string(lineno) + " has unknown status '" +
                              fields[5] + "'");
    out.push_back(std::move(r));
  }
  return out;
}

StudySpec study_from_json(const std::string& text,
                          const std::function<std::string(const std::string&)>& load_file) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ContractViolation(std::string("study document is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ContractViolation("study document must be a JSON object");

  StudySpec spec;
  try {
    if (j.contains("problem")) {
      spec.problem = problem_from_json(j["problem"].dump());
    } else if (j.contains("problem_file")) {
      if (!load_file) throw ContractViolation("problem_file given but no loader available");
      spec.problem = problem_from_json(load_file(j["problem_file"].get<std::string>()));
    } else {
      throw ContractViolation("study document needs 'problem' or 'problem_file'");
    }

    spec.T = j.at("T").get<double>();
    spec.step_counts = j.at("step_counts").get<std::vector<std::size_t>>();

    std::string ref = j.at("reference").get<std::string>();
    if (ref == "analytic")
      spec.reference = ReferenceKind::analytic;
    else if (ref == "pngs_reference")
      spec.reference = ReferenceKind::pngs_reference;
    else
      throw ContractViolation("reference must be 'analytic' or 'pngs_reference'");
    if (j.contains("reference_steps"))
      spec.reference_steps = j["reference_steps"].get<std::size_t>();

    double abstol = 0.0, reltol = 0.0;
    if (j.contains("tolerances")) {
      abstol = j["tolerances"].at("abstol").get<double>();
      reltol = j["tolerances"].at("reltol").get<double>();
    }
    std::vector<double> gammas;
    if (j.contains("gamma")) gammas = j["gamma"].get<std::vector<double>>();

    for (const auto& name : j.at("schemes").get<std::vector<std::string>>()) {
      if (name == "pbd") {
        spec.schemes.push_back(PBD{});
      } else if (name == "moreau" || name == "pngs" || name == "pgs") {
        if (!(abstol > 0.0) || !(reltol > 0.0))
          throw ContractViolation("scheme '" + name + "' needs positive tolerances");
        if (name == "moreau")
          spec.schemes.push_back(MoreauEuler{abstol, reltol});
        else if (name == "pngs")
          spec.schemes.push_back(PNGS{abstol, reltol});
        else
          spec.schemes.push_back(PGS{abstol, reltol});
      } else if (name == "penalty") {
        if (gammas.empty())
          throw ContractViolation("scheme 'penalty' needs a non-empty gamma list");
        for (double g : gammas) spec.schemes.push_back(Penalty{g});
      } else {
        throw ContractViolation("unknown scheme '" + name + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ContractViolation(std::string("study document field error: ") + e.what());
  }
  validate_study(spec);
  return spec;
}

}  // namespace proxflow
