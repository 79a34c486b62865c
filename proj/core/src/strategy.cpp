#include "qstrobe/strategy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "qstrobe/analytic.hpp"
#include "qstrobe/csv.hpp"

namespace qstrobe {

namespace {

GridState make_initial_state(const Grid& grid, const InitialState& init) {
  switch (init.kind) {
    case InitialState::Kind::gaussian:
      return init_gaussian(grid, init.sigma);
    case InitialState::Kind::double_peak:
      return init_double_peak(grid, init.sigma_p, init.x0);
  }
  throw ConfigError("run_strategy: unknown initial state kind");
}

bool use_impulsive_path(const UnitSystem& units, const Oscillator& osc,
                        const MeasurementSpec& meas, double current_width) {
  if (meas.tau == 0.0) return true;
  const double tau_c =
      critical_time(units, osc, current_width, meas.delta_a);
  return meas.tau < impulsive_path_threshold * tau_c;
}

UncertaintyTrace numeric_trace(const UnitSystem& units,
                               const StrategySpec& spec, const Grid& grid,
                               const EvolutionParams& params) {
  validate(grid);
  GridState state = make_initial_state(grid, spec.initial_state);

  UncertaintyTrace trace;
  std::vector<double> values;
  values.reserve(spec.n_max);

  for (int n = 1; n <= spec.n_max; ++n) {
    const Moments pre = moments(state);
    const bool impulsive =
        use_impulsive_path(units, spec.oscillator, spec.measurement, pre.width);

    MeasurementSpec probe = spec.measurement;
    if (impulsive) probe.tau = 0.0;
    const std::vector<double> panel =
        default_readout_panel(state, probe.delta_a);
    const ReadoutDistribution dist = readout_distribution(
        state, units, spec.oscillator, probe, panel, params);
    const double delta_a_eff = effective_uncertainty_numeric(dist);

    trace.entries.push_back({n, delta_a_eff, pre.width});
    values.push_back(delta_a_eff);

    const double epsilon = spec.realize_at_mean ? pre.mean : 0.0;
    if (impulsive) {
      state = impulsive_collapse(state, probe.delta_a, epsilon);
    } else {
      state = evolve_measured(state, units, spec.oscillator, spec.measurement,
                              epsilon, spec.measurement.tau, params);
      renormalize(state);
    }

    if (static_cast<int>(values.size()) >= spec.window) {
      const Asymptote a = asymptotic_value(values, spec.rel_tol, spec.window);
      if (a.converged && spec.stop_at_convergence) {
        trace.converged = true;
        trace.asymptote = a.value;
        return trace;
      }
    }

    if (n < spec.n_max && spec.quiescent > 0.0)
      state = evolve_free(state, units, spec.oscillator, spec.quiescent,
                          params);
  }

  if (static_cast<int>(values.size()) >= spec.window) {
    const Asymptote a = asymptotic_value(values, spec.rel_tol, spec.window);
    trace.converged = a.converged;
    if (a.converged) trace.asymptote = a.value;
  }
  return trace;
}

}  // namespace

UncertaintyTrace run_strategy(const UnitSystem& units, const StrategySpec& spec,
                              Engine engine, const Grid& grid,
                              const EvolutionParams& params) {
  validate(units);
  validate(spec);
  switch (engine) {
    case Engine::analytic:
      return analytic_trace(units, spec);
    case Engine::numeric:
      return numeric_trace(units, spec, grid, params);
    case Engine::both:
      throw ConfigError(
          "run_strategy: engine 'both' is resolved by the front end; run "
          "'analytic' and 'numeric' separately");
  }
  throw ConfigError("run_strategy: unknown engine");
}

ScanResult scan_quiescent(const UnitSystem& units, const StrategySpec& spec,
                          const std::vector<double>& delta_t_values,
                          Engine engine, const Grid& grid,
                          const EvolutionParams& params, int threads) {
  validate(units);
  validate(spec);
  if (delta_t_values.empty())
    throw ConfigError("scan_quiescent: need at least one quiescent time");
  for (double dt : delta_t_values)
    if (!(dt >= 0.0))
      throw ConfigError("scan_quiescent: quiescent times must be >= 0");
  if (threads < 1)
    throw ConfigError("scan_quiescent: threads must be >= 1");

  ScanResult result;
  result.points.resize(delta_t_values.size());

  auto run_point = [&](std::size_t i) {
    ScanPoint& point = result.points[i];
    point.quiescent = delta_t_values[i];
    StrategySpec local = spec;
    local.quiescent = delta_t_values[i];
    local.stop_at_convergence = true;
    try {
      const UncertaintyTrace trace =
          run_strategy(units, local, engine, grid, params);
      point.n_used = static_cast<int>(trace.entries.size());
      point.converged = trace.converged;
      if (trace.asymptote) {
        point.asymptote = *trace.asymptote;
      } else {
        std::vector<double> values;
        values.reserve(trace.entries.size());
        for (const TraceEntry& e : trace.entries)
          values.push_back(e.delta_a_eff);
        const int window =
            std::min<int>(spec.window, static_cast<int>(values.size()));
        point.asymptote =
            asymptotic_value(values, spec.rel_tol, std::max(window, 1)).value;
      }
    } catch (const std::exception& ex) {
      point.error = ex.what();
    }
  };

  const int n_workers =
      std::min<int>(threads, static_cast<int>(delta_t_values.size()));
  if (n_workers <= 1) {
    for (std::size_t i = 0; i < delta_t_values.size(); ++i) run_point(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < delta_t_values.size();
             i = next.fetch_add(1))
          run_point(i);
      });
    for (std::thread& t : pool) t.join();
  }
  return result;
}

void write_trace_csv(const std::string& path, const UncertaintyTrace& trace) {
  CsvWriter csv(path);
  csv.header({"n", "delta_a_eff", "pre_width"});
  for (const TraceEntry& e : trace.entries)
    csv.row({e.n, e.delta_a_eff, e.pre_width});
}

void write_scan_csv(const std::string& path, const ScanResult& scan,
                    double period) {
  if (!(period > 0.0)) throw ConfigError("write_scan_csv: period must be > 0");
  CsvWriter csv(path);
  csv.header({"delta_t_over_T", "asymptote"});
  for (const ScanPoint& p : scan.points)
    if (p.error.empty()) csv.row({p.quiescent / period, p.asymptote});
}

}  // namespace qstrobe
