#include "worldsys/trend.hpp"

#include <cmath>

#include "worldsys/error.hpp"
#include "worldsys/format.hpp"

namespace worldsys {

double eval_trend(const TrendParams& p, double t) {
  if (!(t < p.t0)) {
    throw DomainError("trend undefined at t=" + format_double(t) + " (singularity at t0=" +
                      format_double(p.t0) + ")");
  }
  const double gap = p.t0 - t;
  return p.k == 1.0 ? p.C / gap : p.C / std::pow(gap, p.k);
}

YearValueSeries eval_trend_series(const TrendParams& p, std::span<const double> years) {
  std::vector<Observation> pts;
  pts.reserve(years.size());
  for (double t : years) pts.push_back({t, eval_trend(p, t)});
  return YearValueSeries(std::move(pts));
}

double trend_ode_rhs(const TrendParams& p, double population) {
  if (p.k != 1.0) throw DomainError("trend_ode_rhs is the k = 1 form");
  return population * population / p.C;
}

}  // namespace worldsys
