#include "qstrobe/propagator.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "qstrobe/csv.hpp"

namespace qstrobe {

namespace {

using cd = std::complex<double>;

// FFTW plans are cached per transform length. Planning is not thread-safe
// and is serialized; executing a cached plan on per-call arrays is safe.
// FFTW_ESTIMATE keeps planning deterministic; FFTW_UNALIGNED lets the plans
// run on std::vector storage.
struct PlanPair {
  fftw_plan forward;
  fftw_plan backward;
};

PlanPair plans_for(int n) {
  static std::mutex mutex;
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<cd> buffer(n);
    auto* raw = reinterpret_cast<fftw_complex*>(buffer.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair pair{fftw_plan_dft_1d(n, raw, raw, FFTW_FORWARD, flags),
                  fftw_plan_dft_1d(n, raw, raw, FFTW_BACKWARD, flags)};
    it = cache.emplace(n, pair).first;
  }
  return it->second;
}

void fft_in_place(const fftw_plan& plan, std::vector<cd>& data) {
  auto* raw = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, raw, raw);
}

// Angular wavenumbers in transform order, for n samples spaced dx apart.
std::vector<double> wavenumbers(int n, double dx) {
  std::vector<double> k(n);
  const double dk = 2.0 * std::numbers::pi / (n * dx);
  for (int i = 0; i < n; ++i) {
    const int f = (2 * i < n) ? i : i - n;
    k[i] = dk * f;
  }
  return k;
}

struct StepChecks {
  double boundary_guard;
  bool monotone_norm;
  const char* module;
};

// Shared split-step driver. damping_rate c >= 0 adds the exact per-step
// decay factor e^{−c (x−ε)² dt} alongside the potential phase.
GridState propagate(const GridState& input, const UnitSystem& units,
                    const Oscillator& osc, double duration, int n_steps,
                    double damping_rate, double epsilon,
                    const StepChecks& checks, const std::string& trace_path) {
  const int n = input.grid.n_points;
  const double dt = duration / n_steps;

  std::vector<cd> half(n), full(n), kinetic(n);
  for (int i = 0; i < n; ++i) {
    const double x = input.grid.x(i);
    const double xe = x - epsilon;
    const cd exponent(-damping_rate * xe * xe * 0.5 * dt,
                      -potential(osc, x) * 0.5 * dt / units.hbar);
    half[i] = std::exp(exponent);
    full[i] = half[i] * half[i];
  }
  const std::vector<double> k = wavenumbers(n, input.grid.dx());
  const double inv_n = 1.0 / n;  // fold the transform normalization in
  for (int i = 0; i < n; ++i) {
    const double phase = -units.hbar * k[i] * k[i] * dt / (2.0 * osc.m);
    kinetic[i] = std::polar(inv_n, phase);
  }

  GridState state = input;
  auto& amp = state.amplitudes;
  const PlanPair plans = plans_for(n);

  std::unique_ptr<CsvWriter> trace;
  if (!trace_path.empty()) {
    trace = std::make_unique<CsvWriter>(trace_path);
    trace->header({"t", "norm2", "width"});
  }

  const double initial_norm = norm2(state);
  double previous_norm = initial_norm;

  for (int i = 0; i < n; ++i) amp[i] *= half[i];
  for (int step = 0; step < n_steps; ++step) {
    fft_in_place(plans.forward, amp);
    for (int i = 0; i < n; ++i) amp[i] *= kinetic[i];
    fft_in_place(plans.backward, amp);
    const auto& tail = (step + 1 < n_steps) ? full : half;
    for (int i = 0; i < n; ++i) amp[i] *= tail[i];

    const double edge = edge_amplitude_ratio(state);
    if (edge > checks.boundary_guard)
      throw NumericalError(
          checks.module,
          "state reached the grid boundary at t = " +
              std::to_string((step + 1) * dt) + " (|psi(edge)|/max = " +
              std::to_string(edge) + "); enlarge grid.x_max");
    const double current_norm = norm2(state);
    if (checks.monotone_norm && current_norm > previous_norm * (1.0 + 1e-12))
      throw NumericalError(
          checks.module,
          "norm increased under damped evolution at step " +
              std::to_string(step + 1) + " (scheme instability)");
    previous_norm = current_norm;
    if (trace) {
      const Moments m = moments(state);
      trace->row({(step + 1) * dt, m.norm2, m.width});
    }
  }

  if (!checks.monotone_norm) {
    const double drift = std::abs(previous_norm - initial_norm);
    const double budget = 1e-8 * std::max(1.0, duration / osc.period());
    if (drift > budget)
      throw NumericalError(
          checks.module,
          "norm drifted by " + std::to_string(drift) +
              " under unitary evolution (budget " + std::to_string(budget) +
              "); reduce dt");
  }
  return state;
}

int step_count(double duration, double dt_max) {
  return std::max(1, static_cast<int>(std::ceil(duration / dt_max - 1e-12)));
}

}  // namespace

GridState evolve_free(const GridState& state, const UnitSystem& units,
                      const Oscillator& osc, double duration,
                      const EvolutionParams& params) {
  validate(units);
  validate(osc);
  validate(state.grid);
  if (!(duration >= 0.0))
    throw ConfigError("evolve_free: duration must be >= 0");
  if (duration == 0.0) return state;
  const double dt_max =
      params.dt > 0.0 ? params.dt : params.dt_free_fraction * osc.period();
  const StepChecks checks{params.boundary_guard, false, "propagator"};
  return propagate(state, units, osc, duration, step_count(duration, dt_max),
                   0.0, 0.0, checks, params.trace_csv_path);
}

GridState evolve_measured(const GridState& state, const UnitSystem& units,
                          const Oscillator& osc, const MeasurementSpec& meas,
                          double epsilon, double duration,
                          const EvolutionParams& params) {
  validate(units);
  validate(osc);
  validate(meas);
  validate(state.grid);
  if (!(meas.tau > 0.0))
    throw ConfigError(
        "evolve_measured: tau must be > 0 (apply an impulsive collapse for "
        "tau = 0)");
  if (std::abs(duration - meas.tau) > 1e-12 * meas.tau)
    throw ConfigError("evolve_measured: duration must equal meas.tau");
  if (epsilon < state.grid.x_min || epsilon > state.grid.x_max)
    throw ConfigError("evolve_measured: epsilon must lie inside the grid");
  const double dt_max =
      params.dt > 0.0 ? params.dt : params.dt_measured_fraction * meas.tau;
  const double damping_rate =
      1.0 / (2.0 * meas.tau * meas.delta_a * meas.delta_a);
  const StepChecks checks{params.boundary_guard, true, "propagator"};
  return propagate(state, units, osc, meas.tau,
                   step_count(meas.tau, dt_max), damping_rate, epsilon, checks,
                   params.trace_csv_path);
}

}  // namespace qstrobe
