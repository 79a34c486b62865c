#pragma once

#include <numbers>

#include "qstrobe/errors.hpp"

namespace qstrobe {

struct UnitSystem {
  double hbar = 1.0;
};

// 1-D oscillator with V(x) = m ω² x²/2 + λ x⁴/4; λ = 0 is exactly harmonic.
struct Oscillator {
  double m = 0.5;
  double omega = 1.0;
  double lambda = 0.0;

  double period() const { return 2.0 * std::numbers::pi / omega; }
};

// One position measurement: instrumental error Δa, duration τ (τ = 0 denotes
// the impulsive limit), and the constant readout value ε.
struct MeasurementSpec {
  double delta_a = 1.0;
  double tau = 0.0;
  double epsilon = 0.0;
};

// Initial wavefunction: a Gaussian of width sigma, or a symmetric double
// peak (two Gaussians of width sigma_p centered at ±x0).
struct InitialState {
  enum class Kind { gaussian, double_peak };
  Kind kind = Kind::gaussian;
  double sigma = 5.0;
  double sigma_p = 1.0;
  double x0 = 3.0;
};

// The repeated-measurement protocol: estimate the uncertainty of the current
// state, apply the measurement (realized readout 0 by default), evolve freely
// for the quiescent time, repeat up to n_max times.
struct StrategySpec {
  Oscillator oscillator;
  MeasurementSpec measurement;
  double quiescent = 0.0;
  int n_max = 200;
  InitialState initial_state;
  double rel_tol = 1e-4;  // asymptote detection: relative spread bound...
  int window = 3;         // ...over this many consecutive measurements
  bool stop_at_convergence = true;
  bool realize_at_mean = false;  // realize readouts at the distribution mean
                                 // instead of 0 (for asymmetric states)
};

void validate(const UnitSystem& units);
void validate(const Oscillator& osc);
void validate(const MeasurementSpec& meas);
void validate(const InitialState& init);
void validate(const StrategySpec& spec);

// V(x) = m ω² x²/2 + λ x⁴/4
double potential(const Oscillator& osc, double x);

// Timescale separating quasi-instantaneous measurements from
// measurement-dominated dynamics: 1/τ_c = (ħ/m)(1/Δa² + 1/σ²).
double critical_time(const UnitSystem& units, const Oscillator& osc,
                     double sigma, double delta_a);

}  // namespace qstrobe
