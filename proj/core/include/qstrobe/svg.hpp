#pragma once

#include <array>
#include <string>
#include <vector>

namespace qstrobe {

struct SvgSeries {
  std::string label;
  std::vector<std::array<double, 2>> points;  // (x, y)
};

struct SvgChartOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 960;
  int height = 600;
};

// Self-contained polyline chart: axes, ticks, labels, legend. No external
// renderer; output is deterministic for identical inputs.
void write_line_chart(const std::string& path,
                      const std::vector<SvgSeries>& series,
                      const SvgChartOptions& options);

}  // namespace qstrobe
