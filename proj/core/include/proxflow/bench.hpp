#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "proxflow/problems.hpp"
#include "proxflow/solvers.hpp"

namespace proxflow {

enum class RunStatus { ok, diverged, failed };

const char* status_label(RunStatus s);

// One study cell. Failed cells carry NaN sup_error and zero avg_work;
// diverged cells keep whatever error value the run produced.
struct ErrorRecord {
  std::string scheme;    // scheme_label() of the scheme that produced the run
  double h = 0.0;
  double sup_error = 0.0;
  double avg_work = 0.0;  // mean constraint treatments per step
  double wall_time_s = 0.0;
  RunStatus status = RunStatus::ok;
};

enum class ReferenceKind { analytic, pngs_reference };

struct StudySpec {
  ProblemSpec problem;
  std::vector<SchemeSpec> schemes;
  std::vector<std::size_t> step_counts;  // strictly increasing
  double T = 4.0;
  ReferenceKind reference = ReferenceKind::analytic;
  std::size_t reference_steps = 65536;   // pngs_reference only
  std::size_t samples_per_segment = 10;  // error-grid density between nodes
};

// throws ContractViolation on an inconsistent spec (empty schemes, unsorted
// step counts, analytic reference on a problem without a closed form, ...)
void validate_study(const StudySpec& spec);

// Max over a grid (all trajectory nodes plus n_samples uniform points) of the
// distance between the interpolated trajectory and truth(t).
// Requires n_samples >= number of nodes.
double sup_error(const Trajectory& traj, const std::function<StateVector(double)>& truth,
                 std::size_t n_samples);

// Runs every (scheme, step count) cell, in parallel when hardware and the
// PROXFLOW_THREADS env var allow. Records are ordered by scheme then step
// count. Everything except wall_time_s is reproducible bit-for-bit.
std::vector<ErrorRecord> run_study(const StudySpec& spec);

// Least-squares slope of log(sup_error) against log(h) over the records'
// ok-status points; needs at least 3 distinct h values.
double fit_order(const std::vector<ErrorRecord>& records);

// CSV with header scheme,h,sup_error,avg_work,wall_time_s,status and floats
// in shortest round-trip form. Throws on I/O failure, naming the path.
void emit_csv(const std::vector<ErrorRecord>& records, const std::string& path);

std::string records_to_csv(const std::vector<ErrorRecord>& records);
std::vector<ErrorRecord> records_from_csv(const std::string& text);

// Study document: fields schemes, step_counts, T, reference, tolerances
// (abstol/reltol for the iterative schemes), gamma (list, one penalty scheme
// per entry), reference_steps (optional), and the problem either inline
// ("problem": {...}) or as a path ("problem_file": "...").
StudySpec study_from_json(const std::string& text,
                          const std::function<std::string(const std::string&)>& load_file);

}  // namespace proxflow
