#include <benchmark/benchmark.h>

#include "proxflow/intersection.hpp"
#include "proxflow/problems.hpp"
#include "proxflow/solvers.hpp"

using namespace proxflow;

namespace {

// shared 40-disk fixture; shrunk toward the origin so sweeps have work to do
struct DiskFixture {
  DisksProblem p = disks_system(40, 0.1, 1);
  ConstraintSystem sys = disks_constraints(p);
  VectorField f = disks_force(1.0);
  StateVector squeezed;

  DiskFixture() {
    squeezed = p.x0;
    for (double& v : squeezed) v *= 0.97;
  }
};

DiskFixture& fixture() {
  static DiskFixture fx;
  return fx;
}

void BM_pairwise_project(benchmark::State& state) {
  ConstraintDescriptor c = PairwiseDistance{0, 1, 2, 0.2};
  StateVector x = {0.0, 0.0, 0.1, 0.05};
  for (auto _ : state) {
    StateVector y = project(c, x);
    benchmark::DoNotOptimize(y);
  }
}
BENCHMARK(BM_pairwise_project);

void BM_sweep_disks40(benchmark::State& state) {
  DiskFixture& fx = fixture();
  for (auto _ : state) {
    StateVector y = fx.squeezed;
    sweep_inplace(fx.sys, y);
    benchmark::DoNotOptimize(y);
  }
}
BENCHMARK(BM_sweep_disks40);

void BM_project_exact_disks40(benchmark::State& state) {
  DiskFixture& fx = fixture();
  for (auto _ : state) {
    StateVector y = project_exact(fx.sys, fx.squeezed, 1e-10, 1e-10);
    benchmark::DoNotOptimize(y);
  }
}
BENCHMARK(BM_project_exact_disks40);

void BM_pbd_step_disks40(benchmark::State& state) {
  DiskFixture& fx = fixture();
  double h = 4.0 / 1024.0;
  for (auto _ : state) {
    StepResult r = step_pbd(fx.sys, fx.f, h, fx.p.x0);
    benchmark::DoNotOptimize(r.x);
  }
}
BENCHMARK(BM_pbd_step_disks40);

void BM_pbd_step_sliding(benchmark::State& state) {
  static auto built = sliding_system(3, 10.0, 0.19634954084936207);
  static VectorField f = sliding_force(3);
  double h = 4.0 / 1024.0;
  for (auto _ : state) {
    StepResult r = step_pbd(built.first, f, h, built.second);
    benchmark::DoNotOptimize(r.x);
  }
}
BENCHMARK(BM_pbd_step_sliding);

}  // namespace

BENCHMARK_MAIN();
