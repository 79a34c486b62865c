#pragma once

#include <string>

#include "qstrobe/grid.hpp"
#include "qstrobe/model.hpp"
#include "qstrobe/propagator.hpp"
#include "qstrobe/strategy.hpp"

namespace qstrobe {

struct ScanRange {
  double start_over_T = 0.05;
  double stop_over_T = 1.0;
  int points = 96;
};

struct SpectrumOptions {
  int levels = 4;       // compute E_0 … E_levels
  double x_max = 10.0;  // diagonalization domain
  int n_points = 1025;
};

// Fully resolved run parameters. Flat key=value text format with dotted
// section prefixes; unknown keys are rejected, later assignments win.
// Times are stored as fractions of the oscillator period so that a
// serialized config re-parses to bit-identical values (manifest round-trip).
struct RunConfig {
  UnitSystem units;
  Oscillator oscillator;
  double delta_a = 1.0;
  double tau_over_T = 1e-5;
  double quiescent_over_T = 0.5;
  int n_max = 200;
  double rel_tol = 1e-4;
  int window = 3;
  bool stop_at_convergence = true;
  bool realize_at_mean = false;
  InitialState initial_state;
  // Each readout adds momentum variance (back-action), so at resonant
  // quiescent times the mid-leg width grows like 2·sqrt(n) before the
  // asymptote settles near n ~ 100; the box must hold ~6.8x that width
  // to keep the edge amplitude below the containment guard.
  Grid grid{-160.0, 160.0, 8192};
  EvolutionParams evolution;
  ScanRange scan;
  SpectrumOptions spectrum;
  std::string out_dir;  // empty: resolved from flag/env at run time
  Engine engine = Engine::numeric;
  int threads = 1;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Deterministic full echo; parse_config_text(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

void validate(const RunConfig& config);

Engine engine_from_string(const std::string& name);
std::string engine_to_string(Engine engine);

StrategySpec make_strategy_spec(const RunConfig& config);

// Evenly spaced scan grid over [start, stop]·T with `points` entries.
std::vector<double> scan_values(const ScanRange& range, double period);

}  // namespace qstrobe
