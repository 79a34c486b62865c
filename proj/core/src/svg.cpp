#include "qstrobe/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "qstrobe/errors.hpp"

namespace qstrobe {

namespace {

constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                   "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int palette_size = 6;

std::string escape_xml(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

std::string tick_label(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4g", v);
  return buffer;
}

}  // namespace

void write_line_chart(const std::string& path,
                      const std::vector<SvgSeries>& series,
                      const SvgChartOptions& options) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");

  double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
  bool any = false;
  for (const SvgSeries& s : series)
    for (const auto& p : s.points) {
      if (!std::isfinite(p[0]) || !std::isfinite(p[1])) continue;
      if (!any) {
        x_lo = x_hi = p[0];
        y_lo = y_hi = p[1];
        any = true;
      } else {
        x_lo = std::min(x_lo, p[0]);
        x_hi = std::max(x_hi, p[0]);
        y_lo = std::min(y_lo, p[1]);
        y_hi = std::max(y_hi, p[1]);
      }
    }
  if (x_hi - x_lo < 1e-300) {
    x_lo -= 1.0;
    x_hi += 1.0;
  }
  if (y_hi - y_lo < 1e-300) {
    y_lo -= 1.0;
    y_hi += 1.0;
  }
  const double x_pad = 0.05 * (x_hi - x_lo), y_pad = 0.05 * (y_hi - y_lo);
  x_lo -= x_pad;
  x_hi += x_pad;
  y_lo -= y_pad;
  y_hi += y_pad;

  const int w = options.width, h = options.height;
  const double left = 72, right = w - 24, top = 48, bottom = h - 56;
  const auto px = [&](double x) {
    return left + (x - x_lo) / (x_hi - x_lo) * (right - left);
  };
  const auto py = [&](double y) {
    return bottom - (y - y_lo) / (y_hi - y_lo) * (bottom - top);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
      << "\">\n";
  out << "<rect width=\"" << w << "\" height=\"" << h
      << "\" fill=\"white\"/>\n";

  // Axes frame and ticks.
  out << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\""
      << num(right - left) << "\" height=\"" << num(bottom - top)
      << "\" fill=\"none\" stroke=\"#333333\"/>\n";
  constexpr int n_ticks = 5;
  for (int i = 0; i <= n_ticks; ++i) {
    const double fx = x_lo + (x_hi - x_lo) * i / n_ticks;
    const double fy = y_lo + (y_hi - y_lo) * i / n_ticks;
    const double tx = px(fx), ty = py(fy);
    out << "<line x1=\"" << num(tx) << "\" y1=\"" << num(bottom) << "\" x2=\""
        << num(tx) << "\" y2=\"" << num(bottom + 5)
        << "\" stroke=\"#333333\"/>\n";
    out << "<text x=\"" << num(tx) << "\" y=\"" << num(bottom + 18)
        << "\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\">"
        << tick_label(fx) << "</text>\n";
    out << "<line x1=\"" << num(left - 5) << "\" y1=\"" << num(ty)
        << "\" x2=\"" << num(left) << "\" y2=\"" << num(ty)
        << "\" stroke=\"#333333\"/>\n";
    out << "<text x=\"" << num(left - 8) << "\" y=\"" << num(ty + 4)
        << "\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">"
        << tick_label(fy) << "</text>\n";
  }

  // Series polylines.
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = palette[s % palette_size];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : series[s].points) {
      if (!std::isfinite(p[0]) || !std::isfinite(p[1])) continue;
      out << num(px(p[0])) << ',' << num(py(p[1])) << ' ';
    }
    out << "\"/>\n";
  }

  // Legend, top-right inside the frame.
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = palette[s % palette_size];
    const double ly = top + 16 + 16 * static_cast<double>(s);
    out << "<line x1=\"" << num(right - 150) << "\" y1=\"" << num(ly)
        << "\" x2=\"" << num(right - 122) << "\" y2=\"" << num(ly)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << num(right - 116) << "\" y=\"" << num(ly + 4)
        << "\" font-size=\"12\" font-family=\"sans-serif\">"
        << escape_xml(series[s].label) << "</text>\n";
  }

  // Title and axis labels.
  out << "<text x=\"" << num(0.5 * w) << "\" y=\"28\" font-size=\"16\" "
         "text-anchor=\"middle\" font-family=\"sans-serif\">"
      << escape_xml(options.title) << "</text>\n";
  out << "<text x=\"" << num(0.5 * (left + right)) << "\" y=\""
      << num(h - 14)
      << "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\">"
      << escape_xml(options.x_label) << "</text>\n";
  out << "<text x=\"20\" y=\"" << num(0.5 * (top + bottom))
      << "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "transform=\"rotate(-90 20 "
      << num(0.5 * (top + bottom)) << ")\">" << escape_xml(options.y_label)
      << "</text>\n";
  out << "</svg>\n";
  if (!out) throw NumericalError("svg", "write to '" + path + "' failed");
}

}  // namespace qstrobe
