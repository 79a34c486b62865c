#pragma once

#include <string>

#include "qstrobe/grid.hpp"
#include "qstrobe/model.hpp"

namespace qstrobe {

struct EvolutionParams {
  double dt = 0.0;                     // explicit step; 0 = use the fractions
  double dt_free_fraction = 1e-3;      // free evolution: dt = fraction · T
  double dt_measured_fraction = 0.05;  // measured evolution: dt = fraction · τ
  double boundary_guard = 1e-10;       // containment bound on |ψ(edge)|/max|ψ|
  std::string trace_csv_path;          // non-empty: dump (t, norm2, width)
};

// Unitary evolution under H = p²/2m + V(x) (split-step Fourier, second
// order). Norm is conserved; the state must stay contained in the grid.
GridState evolve_free(const GridState& state, const UnitSystem& units,
                      const Oscillator& osc, double duration,
                      const EvolutionParams& params = {});

// Non-unitary evolution under H − iħ(x−ε)²/(2τΔa²) for one measurement of
// duration τ (`duration` must equal meas.tau). The damping factor is applied
// exactly per step, so the norm decreases monotonically. The result is NOT
// renormalized: its norm² is the unnormalized probability weight of the
// readout ε.
GridState evolve_measured(const GridState& state, const UnitSystem& units,
                          const Oscillator& osc, const MeasurementSpec& meas,
                          double epsilon, double duration,
                          const EvolutionParams& params = {});

}  // namespace qstrobe
