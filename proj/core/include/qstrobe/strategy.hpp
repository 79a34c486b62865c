#pragma once

#include <string>
#include <vector>

#include "qstrobe/estimator.hpp"
#include "qstrobe/trace.hpp"

namespace qstrobe {

enum class Engine { analytic, numeric, both };

// Ratio τ/τ_c below which a measurement is applied as an instantaneous
// collapse instead of a finite-duration damped evolution.
inline constexpr double impulsive_path_threshold = 1e-3;

// One protocol run. Per measurement: the effective uncertainty is computed
// from the readout distribution of the current state, the realized readout
// (0 by default) is applied, and the state evolves freely for the quiescent
// time. Stops at convergence (unless told otherwise) or at n_max.
//
// Engine::analytic delegates to the closed harmonic forms (λ = 0, Gaussian
// start); Engine::numeric runs on the supplied grid. Engine::both is a
// front-end overlay mode and is rejected here.
UncertaintyTrace run_strategy(const UnitSystem& units, const StrategySpec& spec,
                              Engine engine, const Grid& grid = {},
                              const EvolutionParams& params = {});

// Asymptotic effective uncertainty for each quiescent time. Points are
// independent jobs; results are ordered by input order regardless of the
// thread count, and per-point failures are recorded without stopping the
// scan.
ScanResult scan_quiescent(const UnitSystem& units, const StrategySpec& spec,
                          const std::vector<double>& delta_t_values,
                          Engine engine, const Grid& grid = {},
                          const EvolutionParams& params = {}, int threads = 1);

// Columns: n, delta_a_eff, pre_width.
void write_trace_csv(const std::string& path, const UncertaintyTrace& trace);
// Columns: delta_t_over_T, asymptote. Failed points are skipped.
void write_scan_csv(const std::string& path, const ScanResult& scan,
                    double period);

}  // namespace qstrobe
