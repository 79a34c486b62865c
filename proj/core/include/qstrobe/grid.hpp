#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qstrobe/errors.hpp"

namespace qstrobe {

// Uniform symmetric spatial grid with both endpoints sampled:
// x_i = x_min + i·dx, dx = (x_max − x_min)/(n_points − 1).
// Choose dx ≤ σ_min/8 for the narrowest width σ_min the run will produce;
// powers of two for n_points keep the transforms fastest.
struct Grid {
  double x_min = -40.0;
  double x_max = 40.0;
  int n_points = 2048;

  static Grid symmetric(double x_max, int n_points);

  double dx() const { return (x_max - x_min) / (n_points - 1); }
  double x(int i) const { return x_min + i * dx(); }
};

void validate(const Grid& grid);

struct Moments {
  double norm2;          // ∫|ψ|² dx
  double mean;           // ⟨x⟩
  double second_moment;  // ⟨x²⟩
  double width;          // √(2⟨x²⟩ − 2⟨x⟩²): a Gaussian e^{−x²/2σ²} reports σ
};

struct GridState {
  Grid grid;
  std::vector<std::complex<double>> amplitudes;
};

// ψ(x) = (1/πσ²)^{1/4} e^{−x²/2σ²}, renormalized on the grid.
GridState init_gaussian(const Grid& grid, double sigma);
// Same Gaussian centered at x = center (for asymmetric test scenarios).
GridState init_gaussian(const Grid& grid, double sigma, double center);
// ψ ∝ e^{−(x−x0)²/2σ_p²} + e^{−(x+x0)²/2σ_p²}, normalized including overlap.
GridState init_double_peak(const Grid& grid, double sigma_p, double x0);

// Trapezoidal quadrature over the grid.
Moments moments(const GridState& state);
double norm2(const GridState& state);
void renormalize(GridState& state);

// max(|ψ(x_min)|, |ψ(x_max)|) / max_i |ψ_i| — domain-containment measure.
double edge_amplitude_ratio(const GridState& state);

// Columns: x, re_psi, im_psi, abs2.
void write_state_csv(const std::string& path, const GridState& state);

}  // namespace qstrobe
