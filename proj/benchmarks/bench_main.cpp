#include <benchmark/benchmark.h>

#include "qstrobe/analytic.hpp"
#include "qstrobe/estimator.hpp"
#include "qstrobe/propagator.hpp"
#include "qstrobe/spectral.hpp"
#include "qstrobe/strategy.hpp"

namespace {

using namespace qstrobe;

const UnitSystem units;

void bench_free_step(benchmark::State& state) {
  const Oscillator osc;
  const Grid grid = Grid::symmetric(64.0, static_cast<int>(state.range(0)));
  const GridState psi = init_gaussian(grid, 5.0);
  const double dt = osc.period() / 1000.0;
  EvolutionParams params;
  params.dt = dt;
  for (auto _ : state) {
    GridState out = evolve_free(psi, units, osc, dt, params);
    benchmark::DoNotOptimize(out.amplitudes.data());
  }
}
BENCHMARK(bench_free_step)->Arg(2048)->Arg(4096);

void bench_free_period(benchmark::State& state) {
  const Oscillator osc;
  const Grid grid = Grid::symmetric(64.0, 4096);
  const GridState psi = init_gaussian(grid, 5.0);
  for (auto _ : state) {
    GridState out = evolve_free(psi, units, osc, osc.period(), {});
    benchmark::DoNotOptimize(out.amplitudes.data());
  }
}
BENCHMARK(bench_free_period)->Unit(benchmark::kMillisecond);

void bench_measured_evolution(benchmark::State& state) {
  const Oscillator osc;
  const Grid grid = Grid::symmetric(64.0, 4096);
  const GridState psi = init_gaussian(grid, 5.0);
  MeasurementSpec meas;
  meas.tau = 1e-5 * osc.period();
  for (auto _ : state) {
    GridState out = evolve_measured(psi, units, osc, meas, 0.0, meas.tau, {});
    benchmark::DoNotOptimize(out.amplitudes.data());
  }
}
BENCHMARK(bench_measured_evolution);

void bench_impulsive_readout(benchmark::State& state) {
  const Oscillator osc;
  const Grid grid = Grid::symmetric(64.0, 4096);
  const GridState psi = init_gaussian(grid, 5.0);
  MeasurementSpec meas;  // tau = 0
  const std::vector<double> panel = default_readout_panel(psi, meas.delta_a);
  for (auto _ : state) {
    const ReadoutDistribution dist =
        readout_distribution(psi, units, osc, meas, panel, {});
    benchmark::DoNotOptimize(dist.normalization);
  }
}
BENCHMARK(bench_impulsive_readout);

void bench_closed_form_uncertainty(benchmark::State& state) {
  const Oscillator osc;
  MeasurementSpec meas;
  meas.tau = 1e-5 * osc.period();
  for (auto _ : state) {
    const double v = effective_uncertainty_analytic(units, osc, meas, 5.0);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(bench_closed_form_uncertainty);

void bench_closed_form_trace(benchmark::State& state) {
  StrategySpec spec;
  spec.measurement.tau = 1e-5 * spec.oscillator.period();
  spec.quiescent = 0.5 * spec.oscillator.period();
  spec.stop_at_convergence = true;
  for (auto _ : state) {
    const UncertaintyTrace trace = analytic_trace(units, spec);
    benchmark::DoNotOptimize(trace.entries.data());
  }
}
BENCHMARK(bench_closed_form_trace);

void bench_wkb_levels(benchmark::State& state) {
  Oscillator osc;
  osc.m = 1.0;
  osc.lambda = 4.0;
  for (auto _ : state) {
    const SpectrumResult s = eigenvalues_wkb(units, osc, 4);
    benchmark::DoNotOptimize(s.energies.data());
  }
}
BENCHMARK(bench_wkb_levels);

void bench_fd_levels(benchmark::State& state) {
  Oscillator osc;
  osc.m = 1.0;
  osc.lambda = 4.0;
  const Grid grid = Grid::symmetric(8.0, 1025);
  for (auto _ : state) {
    const SpectrumResult s = eigenvalues_fd(units, osc, 4, grid);
    benchmark::DoNotOptimize(s.energies.data());
  }
}
BENCHMARK(bench_fd_levels)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
