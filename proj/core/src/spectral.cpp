#include "qstrobe/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qstrobe/csv.hpp"

namespace qstrobe {

namespace {

constexpr int max_level = 10;

// Positive classical turning point of V(x) = a x² + b x⁴ at energy E.
double turning_point(const Oscillator& osc, double energy) {
  const double a = 0.5 * osc.m * osc.omega * osc.omega;
  const double b = 0.25 * osc.lambda;
  if (b == 0.0) return std::sqrt(energy / a);
  const double x2 = (-a + std::sqrt(a * a + 4.0 * b * energy)) / (2.0 * b);
  return std::sqrt(std::max(x2, 0.0));
}

// Lowest k+1 eigenvalues of the central-difference Hamiltonian on n points
// spanning [x_min, x_max] with hard-wall boundaries, by Sturm-sequence
// bisection on the symmetric tridiagonal matrix.
std::vector<double> tridiagonal_levels(const UnitSystem& units,
                                       const Oscillator& osc, int k,
                                       double x_min, double x_max, int n) {
  const double dx = (x_max - x_min) / (n - 1);
  const double c = units.hbar * units.hbar / (2.0 * osc.m * dx * dx);
  std::vector<double> diag(n), off(n - 1, -c);
  for (int i = 0; i < n; ++i)
    diag[i] = 2.0 * c + potential(osc, x_min + i * dx);

  const lapack_int want = k + 1;
  std::vector<double> w(n);
  std::vector<lapack_int> isuppz(2 * want);
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dstevr(
      LAPACK_COL_MAJOR, 'N', 'I', n, diag.data(), off.data(), 0.0, 0.0, 1,
      want, 0.0, &found, w.data(), nullptr, 1, isuppz.data());
  if (info != 0 || found < want)
    throw NumericalError("spectral",
                         "tridiagonal eigenvalue extraction failed (info = " +
                             std::to_string(info) + ")");
  w.resize(want);
  return w;
}

struct GaussLegendre {
  std::array<double, 64> nodes;    // on [-1, 1]
  std::array<double, 64> weights;
};

// Nodes from Newton iteration on the Legendre polynomial recurrence.
const GaussLegendre& gauss_legendre_64() {
  static const GaussLegendre table = [] {
    GaussLegendre t{};
    constexpr int n = 64;
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
          const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double step = p1 / dp;
        x -= step;
        if (std::abs(step) < 1e-15) break;
      }
      const double weight = 2.0 / ((1.0 - x * x) * dp * dp);
      t.nodes[i] = -x;
      t.weights[i] = weight;
      t.nodes[n - 1 - i] = x;
      t.weights[n - 1 - i] = weight;
    }
    return t;
  }();
  return table;
}

// Action ∮ p dx at energy E. The substitution x = x_t sinθ factors
// E − V(x) = cos²θ · [a x_t² + b x_t⁴ (1 + sin²θ)], removing the
// turning-point singularity, so plain Gauss quadrature converges fast:
// S(E) = 4 √(2m) x_t ∫₀^{π/2} cos²θ √(a x_t² + b x_t⁴ (1 + sin²θ)) dθ.
double action(const UnitSystem& units, const Oscillator& osc, double energy) {
  const double a = 0.5 * osc.m * osc.omega * osc.omega;
  const double b = 0.25 * osc.lambda;
  const double xt = turning_point(osc, energy);
  const double xt2 = xt * xt;
  const GaussLegendre& gl = gauss_legendre_64();
  double integral = 0.0;
  for (int i = 0; i < 64; ++i) {
    const double theta = 0.25 * std::numbers::pi * (gl.nodes[i] + 1.0);
    const double s = std::sin(theta), cth = std::cos(theta);
    const double radicand = a * xt2 + b * xt2 * xt2 * (1.0 + s * s);
    integral += gl.weights[i] * cth * cth * std::sqrt(radicand);
  }
  integral *= 0.25 * std::numbers::pi;
  (void)units;
  return 4.0 * std::sqrt(2.0 * osc.m) * xt * integral;
}

void check_level_count(int k) {
  if (k < 0 || k > max_level)
    throw ConfigError("spectral: level index must satisfy 0 <= k <= " +
                      std::to_string(max_level));
}

void check_increasing(const std::vector<double>& energies) {
  for (std::size_t i = 1; i < energies.size(); ++i)
    if (!(energies[i] > energies[i - 1]))
      throw NumericalError("spectral", "energies are not strictly increasing");
}

}  // namespace

SpectrumResult eigenvalues_fd(const UnitSystem& units, const Oscillator& osc,
                              int k, const Grid& grid) {
  validate(units);
  validate(osc);
  validate(grid);
  check_level_count(k);
  if (grid.n_points < 128)
    throw ConfigError("eigenvalues_fd: grid.n_points must be >= 128");

  // Richardson-extrapolate the O(dx²) discretization error across halvings
  // (2n−1 points keeps the endpoints and halves dx), and require the
  // extrapolated values to be stable under a further halving.
  const int n0 = grid.n_points;
  const auto coarse =
      tridiagonal_levels(units, osc, k, grid.x_min, grid.x_max, n0);
  const auto medium =
      tridiagonal_levels(units, osc, k, grid.x_min, grid.x_max, 2 * n0 - 1);
  const auto fine =
      tridiagonal_levels(units, osc, k, grid.x_min, grid.x_max, 4 * n0 - 3);

  SpectrumResult result;
  result.method = "diagonalization";
  result.energies.resize(k + 1);
  for (int i = 0; i <= k; ++i) {
    const double first = (4.0 * medium[i] - coarse[i]) / 3.0;
    const double second = (4.0 * fine[i] - medium[i]) / 3.0;
    if (std::abs(second - first) > 1e-6 * std::max(1.0, std::abs(second)))
      throw NumericalError(
          "spectral", "level " + std::to_string(i) +
                          " not converged under grid refinement; increase "
                          "grid.n_points");
    result.energies[i] = second;
  }
  check_increasing(result.energies);

  // The box must comfortably contain the top requested state.
  const double margin = 3.0 * std::sqrt(units.hbar / (osc.m * osc.omega));
  const double xt = turning_point(osc, result.energies[k]);
  if (xt + margin > grid.x_max || -(xt + margin) < grid.x_min)
    throw NumericalError(
        "spectral", "grid too small: level " + std::to_string(k) +
                        " turns at |x| = " + std::to_string(xt) +
                        " and needs a margin of " + std::to_string(margin));

  fill_characteristic_periods(units, osc, result);
  return result;
}

SpectrumResult eigenvalues_wkb(const UnitSystem& units, const Oscillator& osc,
                               int k) {
  validate(units);
  validate(osc);
  check_level_count(k);

  SpectrumResult result;
  result.method = "wkb";
  result.energies.resize(k + 1);
  for (int n = 0; n <= k; ++n) {
    const double target =
        2.0 * std::numbers::pi * units.hbar * (n + 0.5);
    double lo = 0.0;
    double hi = units.hbar * osc.omega * (n + 1.0);
    int expansions = 0;
    while (action(units, osc, hi) < target) {
      hi *= 2.0;
      if (++expansions > 200)
        throw NumericalError("spectral",
                             "energy bracketing failed for level " +
                                 std::to_string(n));
    }
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (action(units, osc, mid) < target)
        lo = mid;
      else
        hi = mid;
      if (hi - lo <= 1e-14 * std::max(1.0, hi)) break;
    }
    result.energies[n] = 0.5 * (lo + hi);
  }
  check_increasing(result.energies);
  fill_characteristic_periods(units, osc, result);
  return result;
}

void fill_characteristic_periods(const UnitSystem& units,
                                 const Oscillator& osc,
                                 SpectrumResult& spectrum) {
  validate(units);
  validate(osc);
  if (spectrum.energies.size() < 2)
    throw ConfigError(
        "fill_characteristic_periods: need at least two energies");
  spectrum.periods.clear();
  const int n = static_cast<int>(spectrum.energies.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      PairPeriod pair;
      pair.i = i;
      pair.j = j;
      pair.relevant = (i % 2 == 0) && (j % 2 == 0);
      const double gap =
          std::abs(spectrum.energies[j] - spectrum.energies[i]);
      if (gap < 1e-12) {
        pair.degenerate = true;
      } else {
        pair.period_over_T = units.hbar * osc.omega / gap;
      }
      spectrum.periods.push_back(pair);
    }
}

double period_over_T(const SpectrumResult& spectrum, int i, int j) {
  const int lo = std::min(i, j), hi = std::max(i, j);
  for (const PairPeriod& p : spectrum.periods)
    if (p.i == lo && p.j == hi) {
      if (p.degenerate)
        throw NumericalError("spectral",
                             "levels " + std::to_string(lo) + " and " +
                                 std::to_string(hi) +
                                 " are degenerate; period undefined");
      return p.period_over_T;
    }
  throw ConfigError("period_over_T: pair (" + std::to_string(lo) + ", " +
                    std::to_string(hi) + ") is not in the spectrum");
}

std::vector<MinimumCandidate> predict_minima(const SpectrumResult& spectrum,
                                             double delta_t_max_over_T) {
  if (!(delta_t_max_over_T > 0.0))
    throw ConfigError("predict_minima: delta_t_max must be > 0");
  if (spectrum.energies.size() < 5)
    throw ConfigError(
        "predict_minima: need levels 0..4 for the (2,0) and (4,0) periods");
  const double p2 = period_over_T(spectrum, 2, 0);
  const double p4 = period_over_T(spectrum, 4, 0);

  const auto dist_to_multiples = [](double x, double period) {
    return std::abs(x - period * std::round(x / period));
  };
  const auto score = [&](double x) {
    return 2.0 * dist_to_multiples(x, p2) / p2 +
           dist_to_multiples(x, p4) / p4;
  };

  // The score is piecewise linear with kinks at the multiples and
  // half-multiples of either period, so its local minima lie on that set.
  std::vector<double> kinks;
  for (double period : {p2, p4})
    for (int k = 0; 0.5 * k * period <= delta_t_max_over_T; ++k)
      if (0.5 * k * period > 0.0) kinks.push_back(0.5 * k * period);
  kinks.push_back(delta_t_max_over_T);
  std::sort(kinks.begin(), kinks.end());
  kinks.erase(std::unique(kinks.begin(), kinks.end(),
                          [](double a, double b) {
                            return std::abs(a - b) < 1e-12;
                          }),
              kinks.end());

  std::vector<double> scores(kinks.size());
  for (std::size_t i = 0; i < kinks.size(); ++i) scores[i] = score(kinks[i]);

  std::vector<MinimumCandidate> candidates;
  for (std::size_t i = 0; i < kinks.size(); ++i) {
    const bool below_left = (i == 0) || scores[i] < scores[i - 1];
    const bool below_right =
        (i + 1 == kinks.size()) || scores[i] < scores[i + 1];
    if (below_left && below_right)
      candidates.push_back({kinks[i], scores[i], scores[i] < 0.1});
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const MinimumCandidate& a, const MinimumCandidate& b) {
              return a.score < b.score;
            });
  return candidates;
}

void write_spectrum_csv(const std::string& path, const SpectrumResult& s) {
  CsvWriter csv(path);
  csv.header({"i", "energy"});
  for (std::size_t i = 0; i < s.energies.size(); ++i)
    csv.row({static_cast<int>(i), s.energies[i]});
}

void write_periods_csv(const std::string& path, const SpectrumResult& s) {
  CsvWriter csv(path);
  csv.header({"i", "j", "period_over_T"});
  for (const PairPeriod& p : s.periods)
    if (!p.degenerate) csv.row({p.i, p.j, p.period_over_T});
}

void write_minima_csv(const std::string& path,
                      const std::vector<MinimumCandidate>& candidates) {
  CsvWriter csv(path);
  csv.header({"delta_t_over_T", "score", "strong"});
  for (const MinimumCandidate& c : candidates)
    csv.row({c.delta_t_over_T, c.score, c.strong ? 1 : 0});
}

}  // namespace qstrobe
