// Serial reference vs OpenMP kernels.

#include "qdmc/correlations.hpp"
#include "qdmc/dynamics.hpp"
#include "qdmc/kernels.hpp"
#include "qdmc/scenarios.hpp"

#include <benchmark/benchmark.h>

namespace {

qdmc::BlochData sample_state() {
  Eigen::Matrix4cd rho;
  rho << 0.30, 0.05, 0.02, 0.10,
         0.05, 0.25, 0.12, 0.01,
         0.02, 0.12, 0.25, 0.03,
         0.10, 0.01, 0.03, 0.20;
  return qdmc::bloch_data(rho);
}

const qdmc::Simulation& fig6_trajectory() {
  static const qdmc::Simulation sim = [] {
    const auto c = qdmc::preset("fig6");
    return qdmc::simulate(qdmc::sweep_points(c).front(), c.initial_state, 40.0, c.sample_dt, c.integrator);
  }();
  return sim;
}

void BM_GridScanSerial(benchmark::State& state) {
  const auto data = sample_state();
  const qdmc::GridSpec grid{static_cast<int>(state.range(0)), static_cast<int>(2 * state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(qdmc::serial::scan_measurement_grid(data, grid));
}

void BM_GridScanOmp(benchmark::State& state) {
  const auto data = sample_state();
  const qdmc::GridSpec grid{static_cast<int>(state.range(0)), static_cast<int>(2 * state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(qdmc::omp::scan_measurement_grid(data, grid));
}

void BM_EvaluateTrajectorySerial(benchmark::State& state) {
  const auto& sim = fig6_trajectory();
  for (auto _ : state) benchmark::DoNotOptimize(qdmc::serial::evaluate_trajectory(sim.space, sim.trajectory));
}

void BM_EvaluateTrajectoryOmp(benchmark::State& state) {
  const auto& sim = fig6_trajectory();
  for (auto _ : state) benchmark::DoNotOptimize(qdmc::evaluate_trajectory(sim.space, sim.trajectory));
}

void BM_LindbladApply(benchmark::State& state) {
  qdmc::SystemParams p = qdmc::preset("fig7").params;
  p.n_max = static_cast<int>(state.range(0));
  const auto space = qdmc::make_space(p.n_max);
  const qdmc::LindbladGenerator generator(space, p);
  const Eigen::MatrixXcd rho = qdmc::initial_density(space, qdmc::InitialState::symmetric).matrix();
  Eigen::MatrixXcd out(space.dim(), space.dim());
  for (auto _ : state) {
    generator.apply(rho, 60.0, out);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_GridScanSerial)->Arg(64)->Arg(256);
BENCHMARK(BM_GridScanOmp)->Arg(64)->Arg(256);
BENCHMARK(BM_EvaluateTrajectorySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateTrajectoryOmp)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LindbladApply)->Arg(5)->Arg(10)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
