#pragma once

#include <string>
#include <vector>

#include "qstrobe/propagator.hpp"

namespace qstrobe {

// Unnormalized probability P(ε) of reading out ε, sampled on a panel of
// readout values.
struct ReadoutDistribution {
  std::vector<double> epsilons;
  std::vector<double> weights;  // P(ε_i) ≥ 0, unnormalized
  double normalization = 0.0;   // ∫ P dε
};

// Instantaneous measurement: multiply the amplitude by e^{−(x−ε)²/2Δa²} and
// renormalize. A Gaussian of width σ collapses to width σΔa/√(σ² + Δa²).
GridState impulsive_collapse(const GridState& state, double delta_a,
                             double epsilon);

// Default readout panel: n_points values spanning ±n_std·√(width² + Δa²)
// around the state mean. √(width² + Δa²) is the effective uncertainty a
// Gaussian state of that width would produce, so ±5 of them comfortably
// bracket the distribution.
std::vector<double> default_readout_panel(const GridState& state,
                                          double delta_a, int n_points = 61,
                                          double n_std = 5.0);

// P(ε) over the panel. τ = 0: overlap quadrature ∫|ψ|² e^{−(x−ε)²/Δa²} dx;
// τ > 0: one measured evolution per panel point, weight = final norm².
ReadoutDistribution readout_distribution(const GridState& state,
                                         const UnitSystem& units,
                                         const Oscillator& osc,
                                         const MeasurementSpec& meas,
                                         const std::vector<double>& eps_grid,
                                         const EvolutionParams& params = {});

// Δa_eff = √(2⟨(ε − ε̄)²⟩_P), trapezoidal moments over the panel. With this
// normalization a distribution P ∝ e^{−ε²/w²} reports exactly w.
double effective_uncertainty_numeric(const ReadoutDistribution& dist);

// max|P − G|/max P where G is the Gaussian with P's moments and mass;
// a shape diagnostic (readouts of Gaussian states are exactly Gaussian).
double gaussian_fit_residual(const ReadoutDistribution& dist);

// Columns: epsilon, weight.
void write_distribution_csv(const std::string& path,
                            const ReadoutDistribution& dist);

}  // namespace qstrobe
