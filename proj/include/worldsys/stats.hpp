#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "worldsys/dataset.hpp"

namespace worldsys {

/// Product-moment correlation. Needs n >= 3 and both inputs non-constant
/// (ValidationError otherwise).
double pearson(std::span<const double> x, std::span<const double> y);

/// Two-tailed Student-t tail probability P(|T| >= |t|) with `dof` degrees of
/// freedom, via the regularized incomplete beta function.
double p_value(double t_stat, double dof);

/// Upper-tail probability of the F distribution with (d1, d2) degrees of freedom.
double f_test_p_value(double f_stat, double d1, double d2);

struct CorrelationTest {
  double r;
  std::size_t n;
  double t;  // r sqrt(n-2) / sqrt(1-r^2)
  double p;  // two-tailed, n-2 dof
};

CorrelationTest correlation_test(std::span<const double> x, std::span<const double> y);

struct RegressionResult {
  bool through_origin = false;
  double slope = 0;
  double slope_se = 0;
  double t_slope = 0;
  double p_slope = 1;
  std::optional<double> intercept;
  std::optional<double> intercept_se;
  std::optional<double> t_intercept;
  std::optional<double> p_intercept;
  double r = 0;   // with intercept: Pearson r (signed); through origin: sqrt(r2)
  double r2 = 0;  // through origin: uncentered, 1 - SSE / sum(y^2)
  double sse = 0;
  std::size_t n = 0;
  std::size_t dof = 0;
};

/// Least-squares line y = slope*x (+ intercept). Needs n >= 3 and
/// non-constant x (NumericalError for a degenerate design).
RegressionResult ols(std::span<const double> x, std::span<const double> y, bool through_origin);

struct PolyFit {
  int degree = 1;
  std::vector<double> coefficients;  // ascending powers of x
  double r2 = 0;
  double sse = 0;
  double sst = 0;
  double f_stat = 0;
  double p_value = 1;  // overall F test
  std::size_t n = 0;

  [[nodiscard]] double evaluate(double x) const;
};

/// Least-squares polynomial of degree 1 or 2 through centered and scaled
/// normal equations; needs n >= degree + 2.
PolyFit poly_fit(std::span<const double> x, std::span<const double> y, int degree);

/// Regresses per-capita surplus S on population N (with intercept) over
/// rows whose year lies in [from, to]; at least 4 rows.
RegressionResult surplus_population_proportionality(const MacroDataset& d, double from, double to);

}  // namespace worldsys
