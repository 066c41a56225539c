#include "worldsys/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "worldsys/format.hpp"

namespace worldsys {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 80;
constexpr double kRight = 20;
constexpr double kTop = 40;
constexpr double kBottom = 60;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
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

std::string num(double v) { return format_significant(v, 6); }

struct Axis {
  bool log = false;
  double lo = 0;
  double hi = 1;

  [[nodiscard]] double map(double v) const { return log ? std::log10(v) : v; }
  [[nodiscard]] bool placeable(double v) const { return std::isfinite(v) && (!log || v > 0); }
  [[nodiscard]] double frac(double v) const { return (map(v) - lo) / (hi - lo); }

  [[nodiscard]] std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      for (double e = std::ceil(lo); e <= hi + 1e-12; e += 1) out.push_back(std::pow(10.0, e));
      if (out.size() < 2) {
        out = {std::pow(10.0, lo), std::pow(10.0, hi)};
      }
      return out;
    }
    const double raw = (hi - lo) / 5;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    const double step = (r < 1.5 ? 1 : r < 3 ? 2 : r < 7 ? 5 : 10) * mag;
    for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9; t += step) {
      out.push_back(std::fabs(t) < step * 1e-9 ? 0.0 : t);
    }
    return out;
  }
};

Axis make_axis(bool log, const std::vector<double>& values) {
  Axis a;
  a.log = log;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : values) {
    if (!a.placeable(v)) continue;
    lo = std::min(lo, a.map(v));
    hi = std::max(hi, a.map(v));
  }
  if (!std::isfinite(lo)) {
    lo = 0;
    hi = 1;
  }
  if (hi - lo < 1e-12 * std::max(1.0, std::fabs(hi))) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.04 * (hi - lo);
  a.lo = lo - pad;
  a.hi = hi + pad;
  return a;
}

}  // namespace

std::string SvgPlot::render() const {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& s : series) {
    xs.insert(xs.end(), s.x.begin(), s.x.end());
    ys.insert(ys.end(), s.y.begin(), s.y.end());
  }
  const Axis ax = make_axis(log_x, xs);
  const Axis ay = make_axis(log_y, ys);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + ax.frac(v) * pw; };
  auto py = [&](double v) { return kTop + (1 - ay.frac(v)) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"13\">"
    << escape(title) << "</text>\n";
  o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : ax.ticks()) {
    if (ax.map(t) < ax.lo || ax.map(t) > ax.hi) continue;
    const double x = px(t);
    o << "<line x1=\"" << num(x) << "\" y1=\"" << kTop + ph << "\" x2=\"" << num(x) << "\" y2=\""
      << kTop + ph + 5 << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << num(x) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">"
      << num(t) << "</text>\n";
  }
  for (double t : ay.ticks()) {
    if (ay.map(t) < ay.lo || ay.map(t) > ay.hi) continue;
    const double y = py(t);
    o << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(y) << "\" x2=\"" << kLeft << "\" y2=\""
      << num(y) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << num(t)
      << "</text>\n";
  }
  o << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
    << escape(x_label) << (log_x ? " (log)" : "") << "</text>\n";
  o << "<text transform=\"translate(18," << kTop + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
    << escape(y_label) << (log_y ? " (log)" : "") << "</text>\n";

  for (const auto& s : series) {
    const std::size_t n = std::min(s.x.size(), s.y.size());
    if (s.style == SvgSeries::Style::line) {
      o << "<polyline fill=\"none\" stroke=\"" << escape(s.color) << "\" stroke-width=\"1.5\" points=\"";
      bool first = true;
      for (std::size_t i = 0; i < n; ++i) {
        if (!ax.placeable(s.x[i]) || !ay.placeable(s.y[i])) continue;
        o << (first ? "" : " ") << num(px(s.x[i])) << ',' << num(py(s.y[i]));
        first = false;
      }
      o << "\"/>\n";
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        if (!ax.placeable(s.x[i]) || !ay.placeable(s.y[i])) continue;
        o << "<circle cx=\"" << num(px(s.x[i])) << "\" cy=\"" << num(py(s.y[i]))
          << "\" r=\"3\" fill=\"" << escape(s.color) << "\"/>\n";
      }
    }
  }

  double ly = kTop + 14;
  for (const auto& s : series) {
    if (s.label.empty()) continue;
    const double lx = kLeft + 10;
    if (s.style == SvgSeries::Style::line) {
      o << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\"" << lx + 16 << "\" y2=\"" << ly - 4
        << "\" stroke=\"" << escape(s.color) << "\" stroke-width=\"1.5\"/>\n";
    } else {
      o << "<circle cx=\"" << lx + 8 << "\" cy=\"" << ly - 4 << "\" r=\"3\" fill=\"" << escape(s.color)
        << "\"/>\n";
    }
    o << "<text x=\"" << lx + 22 << "\" y=\"" << ly << "\">" << escape(s.label) << "</text>\n";
    ly += 15;
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace worldsys
