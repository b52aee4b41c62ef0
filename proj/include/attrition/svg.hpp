#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <sstream>
#include <string>

#include "attrition/csv.hpp"

namespace attrition {

/// Minimal single-series line chart, enough to eyeball a CH curve or an ROC
/// without bringing in a plotting stack. Non-finite y values are skipped.
inline std::string line_chart_svg(std::span<const double> xs, std::span<const double> ys,
                                  const std::string& x_label, const std::string& y_label,
                                  const std::string& title) {
  constexpr double kWidth = 640.0;
  constexpr double kHeight = 440.0;
  constexpr double kMargin = 56.0;

  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool seen = false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) continue;
    if (!seen) {
      x_min = x_max = xs[i];
      y_min = y_max = ys[i];
      seen = true;
    } else {
      x_min = std::min(x_min, xs[i]);
      x_max = std::max(x_max, xs[i]);
      y_min = std::min(y_min, ys[i]);
      y_max = std::max(y_max, ys[i]);
    }
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) y_max = y_min + 1.0;

  const auto px = [&](double x) {
    return kMargin + (x - x_min) / (x_max - x_min) * (kWidth - 2 * kMargin);
  };
  const auto py = [&](double y) {
    return kHeight - kMargin - (y - y_min) / (y_max - y_min) * (kHeight - 2 * kMargin);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
  out << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
      << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
      << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
  bool first = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) continue;
    if (!first) out << ' ';
    out << format_double(px(xs[i])) << ',' << format_double(py(ys[i]));
    first = false;
  }
  out << "\"/>\n";

  const auto tick = [&](double x, double y, const std::string& text, const char* anchor) {
    out << "<text x=\"" << x << "\" y=\"" << y << "\" text-anchor=\"" << anchor
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << text << "</text>\n";
  };
  tick(kMargin, kHeight - kMargin + 18, format_double(x_min), "middle");
  tick(kWidth - kMargin, kHeight - kMargin + 18, format_double(x_max), "middle");
  tick(kMargin - 6, kHeight - kMargin + 4, format_double(y_min), "end");
  tick(kMargin - 6, kMargin + 4, format_double(y_max), "end");
  tick(kWidth / 2, kHeight - 12, x_label, "middle");
  out << "<text x=\"16\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 "
      << kHeight / 2 << ")\">" << y_label << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace attrition
