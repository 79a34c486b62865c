#include "qstrobe/analytic.hpp"

#include <cmath>
#include <string>

namespace qstrobe {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

void require_harmonic(const Oscillator& osc, const char* op) {
  if (osc.lambda != 0.0)
    throw ConfigError(std::string(op) +
                      ": closed forms exist only for the harmonic oscillator "
                      "(lambda = 0)");
}

double impulsive_uncertainty(double delta_a, double sigma) {
  return std::sqrt(delta_a * delta_a + sigma * sigma);
}

double impulsive_width(double delta_a, double sigma) {
  return sigma * delta_a / std::sqrt(sigma * sigma + delta_a * delta_a);
}

// β = (cos z − 1)/(z sin z) with the cancellation-free branch near z = 0
// (−tan(z/2)/z is exact there; the direct form is exact away from 0, in
// particular near z = π where tan(z/2) itself cancels catastrophically).
cd beta_of(cd z) {
  if (std::abs(z) < 1.0) return -std::tan(0.5 * z) / z;
  return (std::cos(z) - 1.0) / (z * std::sin(z));
}

struct Evaluated {
  RenormalizedParams p;
  cd z, sz, cz;
};

Evaluated evaluate_params(const UnitSystem& units, const Oscillator& osc,
                          const MeasurementSpec& meas, double sigma) {
  Evaluated ev;
  ev.p.omega_r = renormalized_frequency(units, osc, meas);
  ev.z = ev.p.omega_r * meas.tau;
  ev.sz = std::sin(ev.z);
  ev.cz = std::cos(ev.z);
  if (std::abs(ev.sz) < 1e-12)
    throw NumericalError(
        "analytic", "sin(omega_r tau) vanishes at tau = " +
                        std::to_string(meas.tau) +
                        "; the closed forms are singular at this duration");
  ev.p.alpha = osc.m * ev.p.omega_r * sigma * sigma / units.hbar;
  ev.p.beta = beta_of(ev.z);
  // γ = 1/(1 − iα cot z) = sin z/(sin z − iα cos z)
  ev.p.gamma = ev.sz / (ev.sz - kI * ev.p.alpha * ev.cz);
  return ev;
}

}  // namespace

cd renormalized_frequency(const UnitSystem& units, const Oscillator& osc,
                          const MeasurementSpec& meas) {
  require_harmonic(osc, "renormalized_frequency");
  if (!(meas.tau > 0.0))
    throw ConfigError(
        "renormalized_frequency: tau must be > 0 (the impulsive limit has no "
        "finite renormalized frequency)");
  const cd omega_r_sq(osc.omega * osc.omega,
                      -units.hbar /
                          (osc.m * meas.tau * meas.delta_a * meas.delta_a));
  return std::sqrt(omega_r_sq);  // principal branch: Re >= 0
}

RenormalizedParams renormalized_params(const UnitSystem& units,
                                       const Oscillator& osc,
                                       const MeasurementSpec& meas,
                                       double sigma) {
  if (!(sigma > 0.0))
    throw ConfigError("renormalized_params: sigma must be > 0");
  return evaluate_params(units, osc, meas, sigma).p;
}

double effective_uncertainty_analytic(const UnitSystem& units,
                                      const Oscillator& osc,
                                      const MeasurementSpec& meas,
                                      double sigma) {
  require_harmonic(osc, "effective_uncertainty_analytic");
  if (!(sigma > 0.0))
    throw ConfigError("effective_uncertainty_analytic: sigma must be > 0");
  const double da2 = meas.delta_a * meas.delta_a;
  const double s2 = sigma * sigma;
  if (meas.tau <= tau_switch_fraction * osc.period())
    return impulsive_uncertainty(meas.delta_a, sigma);

  const Evaluated ev = evaluate_params(units, osc, meas, sigma);
  const auto& [omega_r, alpha, beta, gamma] = ev.p;
  const cd a_term =
      1.0 + (s2 / da2) * (kI * (2.0 * beta + 1.0) / (alpha * ev.z) -
                          beta * beta * gamma);
  const cd b_term = beta * (1.0 - kI * alpha * gamma / ev.sz);
  // (1 + iα tan z)/(1 + (i/α) tan z), multiplied through by cos z so the
  // tangent poles cancel.
  const cd c_term =
      (ev.cz + kI * alpha * ev.sz) / (ev.cz + (kI / alpha) * ev.sz);
  const double b_re = b_term.real();
  const double inv_sq = a_term.real() / da2 -
                        (s2 / (da2 * da2)) * b_re * b_re / c_term.real();
  if (!(inv_sq > 0.0) || !std::isfinite(inv_sq))
    throw NumericalError("analytic",
                         "effective uncertainty evaluation lost positivity at "
                         "tau = " + std::to_string(meas.tau));
  return 1.0 / std::sqrt(inv_sq);
}

double collapsed_width(const UnitSystem& units, const Oscillator& osc,
                       const MeasurementSpec& meas, double sigma) {
  require_harmonic(osc, "collapsed_width");
  if (!(sigma > 0.0))
    throw ConfigError("collapsed_width: sigma must be > 0");
  if (meas.tau <= tau_switch_fraction * osc.period())
    return impulsive_width(meas.delta_a, sigma);

  const Evaluated ev = evaluate_params(units, osc, meas, sigma);
  const cd alpha = ev.p.alpha;
  const cd ratio = (alpha * alpha * ev.sz - kI * alpha * ev.cz) /
                   (ev.sz - kI * alpha * ev.cz);
  const double r = ratio.real();
  if (!(r > 0.0) || !std::isfinite(r))
    throw NumericalError("analytic",
                         "collapsed width evaluation lost positivity at tau "
                         "= " + std::to_string(meas.tau));
  return sigma / std::sqrt(r);
}

double free_width(const UnitSystem& units, const Oscillator& osc,
                  double sigma_tau, double t) {
  require_harmonic(osc, "free_width");
  if (!(sigma_tau > 0.0))
    throw ConfigError("free_width: sigma_tau must be > 0");
  const double c = std::cos(osc.omega * t);
  const double s = std::sin(osc.omega * t);
  const double q = units.hbar / (osc.m * osc.omega * sigma_tau);
  return std::sqrt(sigma_tau * sigma_tau * c * c + q * q * s * s);
}

UncertaintyTrace analytic_trace(const UnitSystem& units,
                                const StrategySpec& spec) {
  validate(units);
  validate(spec);
  require_harmonic(spec.oscillator, "analytic_trace");
  if (spec.initial_state.kind != InitialState::Kind::gaussian)
    throw ConfigError("analytic_trace: requires a Gaussian initial state");

  UncertaintyTrace trace;
  std::vector<double> uncertainties;
  double sigma = spec.initial_state.sigma;
  for (int n = 1; n <= spec.n_max; ++n) {
    double d_eff, sigma_col;
    try {
      d_eff = effective_uncertainty_analytic(units, spec.oscillator,
                                             spec.measurement, sigma);
      sigma_col =
          collapsed_width(units, spec.oscillator, spec.measurement, sigma);
    } catch (const NumericalError& e) {
      throw NumericalError(e.module(), std::string(e.what()) +
                                           " (measurement n=" +
                                           std::to_string(n) + ")");
    }
    trace.entries.push_back({n, d_eff, sigma});
    uncertainties.push_back(d_eff);
    if (static_cast<int>(uncertainties.size()) >= spec.window) {
      const Asymptote a =
          asymptotic_value(uncertainties, spec.rel_tol, spec.window);
      if (a.converged) {
        trace.converged = true;
        trace.asymptote = a.value;
        if (spec.stop_at_convergence) break;
      }
    }
    sigma = free_width(units, spec.oscillator, sigma_col, spec.quiescent);
  }
  return trace;
}

}  // namespace qstrobe
