#pragma once

#include <complex>

#include "qstrobe/model.hpp"
#include "qstrobe/trace.hpp"

namespace qstrobe {

// Fraction of the oscillator period below which the closed-form finite-τ
// expressions hand over to their impulsive limits (they are 0/0-like as
// τ → 0; at the switch point the two branches agree to better than 1e-6).
inline constexpr double tau_switch_fraction = 1e-8;

// Dimensionless combinations entering the closed-form harmonic results for
// a measurement of duration τ on a Gaussian state of width σ.
struct RenormalizedParams {
  std::complex<double> omega_r;  // complex frequency dressed by the damping
  std::complex<double> alpha;    // m ω_r σ²/ħ
  std::complex<double> beta;     // [cos(ω_r τ) − 1]/[ω_r τ sin(ω_r τ)]
  std::complex<double> gamma;    // 1/[1 − iα cot(ω_r τ)]
};

// Principal square root of ω² − iħ/(m τ Δa²), real part positive.
// Harmonic only (λ = 0); τ must be positive.
std::complex<double> renormalized_frequency(const UnitSystem& units,
                                            const Oscillator& osc,
                                            const MeasurementSpec& meas);

RenormalizedParams renormalized_params(const UnitSystem& units,
                                       const Oscillator& osc,
                                       const MeasurementSpec& meas,
                                       double sigma);

// Effective uncertainty of a single measurement of duration τ on a Gaussian
// state of width σ. Below the τ switch this is √(Δa² + σ²).
double effective_uncertainty_analytic(const UnitSystem& units,
                                      const Oscillator& osc,
                                      const MeasurementSpec& meas,
                                      double sigma);

// Width of the (renormalized) post-measurement state. Below the τ switch
// this is σΔa/√(σ² + Δa²).
double collapsed_width(const UnitSystem& units, const Oscillator& osc,
                       const MeasurementSpec& meas, double sigma);

// Width of a freely evolving Gaussian that had width sigma_tau at t = 0:
// σ(t)² = σ(τ)² cos²(ωt) + [ħ/(m ω σ(τ))]² sin²(ωt); period T/2.
double free_width(const UnitSystem& units, const Oscillator& osc,
                  double sigma_tau, double t);

// The full protocol in closed form: per measurement, record the effective
// uncertainty, collapse the width, and propagate it through the quiescent
// time. Harmonic oscillator and Gaussian initial state only.
UncertaintyTrace analytic_trace(const UnitSystem& units,
                                const StrategySpec& spec);

}  // namespace qstrobe
