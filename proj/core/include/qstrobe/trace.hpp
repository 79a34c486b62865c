#pragma once

#include <optional>
#include <string>
#include <vector>

namespace qstrobe {

struct TraceEntry {
  int n;               // 1-based measurement index
  double delta_a_eff;  // effective uncertainty of this measurement
  double pre_width;    // state width just before the measurement
};

// Per-measurement effective uncertainty with asymptote detection.
struct UncertaintyTrace {
  std::vector<TraceEntry> entries;
  std::optional<double> asymptote;  // present iff converged
  bool converged = false;
};

struct ScanPoint {
  double quiescent;  // ΔT
  double asymptote;  // converged value, or last-window mean when flagged
  int n_used = 0;
  bool converged = false;
  std::string error;  // non-empty: this point failed and carries no value
};

struct ScanResult {
  std::vector<ScanPoint> points;  // sorted by quiescent time
};

struct Asymptote {
  double value;
  bool converged;
};

// Mean of the last `window` values, flagged converged when their relative
// spread is below rel_tol. Requires at least `window` values.
Asymptote asymptotic_value(const std::vector<double>& values, double rel_tol,
                           int window);
Asymptote asymptotic_value(const UncertaintyTrace& trace, double rel_tol,
                           int window);

}  // namespace qstrobe
