#pragma once

#include <string>
#include <vector>

#include "qstrobe/grid.hpp"
#include "qstrobe/model.hpp"

namespace qstrobe {

struct PairPeriod {
  int i = 0;
  int j = 0;
  double period_over_T = 0.0;  // ħω/|E_i − E_j|
  bool relevant = false;  // even↔even pair: collapse around 0 preserves the
                          // even-parity sector, so only these pairs drive the
                          // free recurrence between measurements
  bool degenerate = false;  // |E_i − E_j| below resolution; period undefined
};

struct SpectrumResult {
  std::vector<double> energies;  // E_0 … E_k, ascending
  std::string method;            // "diagonalization" or "wkb"
  std::vector<PairPeriod> periods;
};

// Lowest k+1 levels of H = p²/2m + V(x) from the symmetric tridiagonal
// central-difference operator (Sturm-sequence bisection extraction of the
// extreme eigenvalues), Richardson-extrapolated across a grid refinement:
// E = (4·E_fine − E_coarse)/3. Periods are filled in.
SpectrumResult eigenvalues_fd(const UnitSystem& units, const Oscillator& osc,
                              int k, const Grid& grid);

// Semiclassical quantization: 2∫√(2m(E − V)) dx over the classically allowed
// region equals 2πħ(n + 1/2); solved per level by bracketing bisection on E.
// The action integral substitutes x = x_t sinθ, which removes the
// turning-point singularity exactly. Periods are filled in.
SpectrumResult eigenvalues_wkb(const UnitSystem& units, const Oscillator& osc,
                               int k);

// Fill periods for all level pairs: T_ij/T = ħω/|E_i − E_j|.
void fill_characteristic_periods(const UnitSystem& units,
                                 const Oscillator& osc,
                                 SpectrumResult& spectrum);
// Lookup (symmetric in i, j); throws if the pair is absent or degenerate.
double period_over_T(const SpectrumResult& spectrum, int i, int j);

struct MinimumCandidate {
  double delta_t_over_T;
  double score;  // weighted distance to the nearest multiples of T20 and T40
  bool strong;   // score < 0.1
};

// Quiescent times in (0, delta_t_max] commensurate with both the (2,0) and
// (4,0) recurrence periods, ranked by ascending commensurability score
// score(ΔT) = 2·d(ΔT, T20·Z)/T20 + d(ΔT, T40·Z)/T40. The top candidate is
// the predicted optimal quiescent time.
std::vector<MinimumCandidate> predict_minima(const SpectrumResult& spectrum,
                                             double delta_t_max_over_T);

// Columns: i, energy.
void write_spectrum_csv(const std::string& path, const SpectrumResult& s);
// Columns: i, j, period_over_T. Degenerate pairs are skipped.
void write_periods_csv(const std::string& path, const SpectrumResult& s);
// Columns: delta_t_over_T, score, strong.
void write_minima_csv(const std::string& path,
                      const std::vector<MinimumCandidate>& candidates);

}  // namespace qstrobe
