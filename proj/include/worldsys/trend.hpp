#pragma once

#include <span>

#include "worldsys/series.hpp"

namespace worldsys {

/// Blow-up trend value(t) = C / (t0 - t)^k, defined for t < t0.
/// k = 1 is the simple hyperbola, k = 2 the quadratic hyperbola.
struct TrendParams {
  double C = 1;
  double t0 = 0;
  double k = 1;
};

/// Throws DomainError when t >= t0.
double eval_trend(const TrendParams& p, double t);

/// Evaluates the trend at every year in `years`.
YearValueSeries eval_trend_series(const TrendParams& p, std::span<const double> years);

/// dN/dt = N^2 / C, the differential form of the k = 1 trend. `p.k` must be 1.
double trend_ode_rhs(const TrendParams& p, double population);

}  // namespace worldsys
