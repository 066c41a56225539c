#pragma once

#include <string>
#include <vector>

namespace worldsys {

struct SvgSeries {
  enum class Style { points, line };

  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  Style style = Style::points;
  std::string color = "#1f77b4";
};

/// Minimal standalone SVG chart: axes with ticks, labels, a legend, and any
/// number of scatter or polyline series. Points that cannot be placed on a
/// log axis are dropped.
struct SvgPlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<SvgSeries> series;

  [[nodiscard]] std::string render() const;
};

}  // namespace worldsys
