#pragma once

#include <optional>
#include <string>
#include <vector>

#include "worldsys/series.hpp"
#include "worldsys/trend.hpp"

namespace worldsys {

enum class Convention { continuous_t0, integer_t0 };

/// Outer-loop criterion for choosing t0 (and k). Both use the closed-form
/// least-squares C for the chosen (t0, k).
///  - max_correlation: maximize Pearson r between (t0 - t)^-k and the data;
///    this is the criterion that reproduces the published world fits.
///  - least_squares: minimize unweighted SSE of C (t0 - t)^-k.
enum class Objective { max_correlation, least_squares };

struct FitOptions {
  std::optional<double> k = 1.0;  // nullopt: k is estimated on [k_min, k_max]
  Convention convention = Convention::continuous_t0;
  Objective objective = Objective::max_correlation;
  double horizon = 200.0;  // t0 searched on (last_year, last_year + horizon]
  double k_min = 0.1;
  double k_max = 4.0;
  double t0_tolerance = 1e-9;
  double k_tolerance = 1e-10;
};

struct TrendFit {
  TrendParams params;
  double sse = 0;
  double sst = 0;
  double r = 0;           // Pearson(fitted, observed)
  double r2 = 0;          // 1 - sse / sst
  double r2_pearson = 0;  // r * r
  std::vector<double> residuals;  // observed - fitted
  Convention convention = Convention::continuous_t0;
  Objective objective = Objective::max_correlation;
  bool k_free = false;
  std::vector<std::string> warnings;
};

/// argmin over C of sum (v_i - C u_i)^2 with u_i = (t0 - t_i)^-k, i.e.
/// C = sum v u / sum u^2. Requires t0 beyond the last year and k > 0.
double solve_scale_given_t0(const YearValueSeries& s, double t0, double k);

/// Fits C / (t0 - t)^k to a positive series with at least 3 points.
TrendFit fit_trend(const YearValueSeries& s, const FitOptions& options = {});

/// Fit diagnostics for fixed parameters (e.g. a published curve).
TrendFit evaluate_trend(const YearValueSeries& s, const TrendParams& params,
                        Convention convention = Convention::continuous_t0);

struct GoodnessOfFit {
  double r = 0;
  double r2 = 0;  // 1 - sse / sst
  double r2_pearson = 0;
  double sse = 0;
  double sst = 0;
};

/// Compares two series over identical years. ValidationError when the year
/// sets differ or the observed series has zero variance.
GoodnessOfFit goodness_of_fit(const YearValueSeries& observed, const YearValueSeries& predicted);

const char* to_string(Convention c);
const char* to_string(Objective o);

}  // namespace worldsys
