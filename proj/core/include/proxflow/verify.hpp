#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace proxflow {

// Outcome of one randomized property check.
struct PropertyResult {
  std::string name;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst = 0.0;  // extremal statistic, meaning given in note
  std::string note;
  bool passed = true;
};

struct SuiteResult {
  std::string suite;
  std::vector<PropertyResult> properties;
  bool passed = true;
};

struct VerifyOptions {
  std::uint64_t seed = 20260819;
  std::size_t geometry_samples = 2000;
  std::size_t hypomonotonicity_samples = 10000;
  std::size_t lemma_traces = 10000;
  std::size_t contraction_samples = 1000;
  std::size_t calmness_samples = 1000;
  std::size_t equivalence_runs = 100;
  // appends a synthetic failing property, for exercising the failure path
  bool inject_violation = false;
};

// {"geometry", "lemmas", "calmness", "stability"}
const std::vector<std::string>& suite_names();

// Runs one suite; throws ContractViolation for an unknown name.
SuiteResult run_suite(const std::string& name, const VerifyOptions& opts);

}  // namespace proxflow
