#include "worldsys/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "worldsys/error.hpp"
#include "worldsys/special.hpp"

namespace worldsys {

namespace {

void require_pairs(std::span<const double> x, std::span<const double> y, std::size_t min_n,
                   const char* what) {
  if (x.size() != y.size()) throw ValidationError(std::string(what) + ": x and y differ in length");
  if (x.size() < min_n) {
    throw ValidationError(std::string(what) + ": need at least " + std::to_string(min_n) +
                          " points, got " + std::to_string(x.size()));
  }
}

double mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  require_pairs(x, y, 3, "pearson");
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0 || syy == 0) throw ValidationError("pearson: zero variance");
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

double p_value(double t_stat, double dof) {
  if (!(dof >= 1)) throw DomainError("p_value: dof must be >= 1");
  if (std::isnan(t_stat)) return NAN;
  if (std::isinf(t_stat)) return 0.0;
  if (t_stat == 0) return 1.0;
  const double x = dof / (dof + t_stat * t_stat);
  return regularized_incomplete_beta(0.5 * dof, 0.5, x);
}

double f_test_p_value(double f_stat, double d1, double d2) {
  if (!(d1 > 0) || !(d2 > 0)) throw DomainError("f_test_p_value: degrees of freedom must be positive");
  if (std::isinf(f_stat)) return 0.0;
  if (!(f_stat > 0)) return 1.0;
  const double x = d2 / (d2 + d1 * f_stat);
  return regularized_incomplete_beta(0.5 * d2, 0.5 * d1, x);
}

CorrelationTest correlation_test(std::span<const double> x, std::span<const double> y) {
  CorrelationTest out{};
  out.r = pearson(x, y);
  out.n = x.size();
  const double dof = static_cast<double>(out.n - 2);
  const double denom = 1.0 - out.r * out.r;
  out.t = denom > 0 ? out.r * std::sqrt(dof / denom) : std::copysign(INFINITY, out.r);
  out.p = p_value(out.t, dof);
  return out;
}

RegressionResult ols(std::span<const double> x, std::span<const double> y, bool through_origin) {
  require_pairs(x, y, 3, "ols");
  const std::size_t n = x.size();
  RegressionResult res;
  res.through_origin = through_origin;
  res.n = n;

  if (through_origin) {
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sxx += x[i] * x[i];
      sxy += x[i] * y[i];
      syy += y[i] * y[i];
    }
    if (sxx == 0) throw NumericalError("ols: degenerate design (all x are zero)");
    res.slope = sxy / sxx;
    double sse = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = y[i] - res.slope * x[i];
      sse += e * e;
    }
    res.sse = sse;
    res.dof = n - 1;
    const double s2 = sse / static_cast<double>(res.dof);
    res.slope_se = std::sqrt(s2 / sxx);
    res.r2 = syy > 0 ? 1.0 - sse / syy : 0.0;
    res.r = std::sqrt(std::max(res.r2, 0.0));
  } else {
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sxx += (x[i] - mx) * (x[i] - mx);
      sxy += (x[i] - mx) * (y[i] - my);
      syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0) throw NumericalError("ols: degenerate design (all x equal)");
    res.slope = sxy / sxx;
    const double b0 = my - res.slope * mx;
    double sse = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = y[i] - b0 - res.slope * x[i];
      sse += e * e;
    }
    res.sse = sse;
    res.dof = n - 2;
    const double s2 = sse / static_cast<double>(res.dof);
    res.slope_se = std::sqrt(s2 / sxx);
    res.intercept = b0;
    res.intercept_se = std::sqrt(s2 * (1.0 / static_cast<double>(n) + mx * mx / sxx));
    res.r = syy > 0 ? std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0) : 0.0;
    res.r2 = res.r * res.r;
    if (*res.intercept_se > 0) {
      res.t_intercept = b0 / *res.intercept_se;
    } else {
      res.t_intercept = b0 == 0 ? 0.0 : std::copysign(INFINITY, b0);
    }
    res.p_intercept = p_value(*res.t_intercept, static_cast<double>(res.dof));
  }
  if (res.slope_se > 0) {
    res.t_slope = res.slope / res.slope_se;
  } else {
    res.t_slope = res.slope == 0 ? 0.0 : std::copysign(INFINITY, res.slope);
  }
  res.p_slope = p_value(res.t_slope, static_cast<double>(res.dof));
  return res;
}

double PolyFit::evaluate(double x) const {
  double v = 0;
  for (std::size_t i = coefficients.size(); i-- > 0;) v = v * x + coefficients[i];
  return v;
}

PolyFit poly_fit(std::span<const double> x, std::span<const double> y, int degree) {
  if (degree != 1 && degree != 2) throw DomainError("poly_fit: degree must be 1 or 2");
  require_pairs(x, y, static_cast<std::size_t>(degree) + 2, "poly_fit");
  const std::size_t n = x.size();
  const std::size_t p = static_cast<std::size_t>(degree) + 1;

  // z = (x - center) / scale keeps the normal matrix well conditioned.
  const double center = mean(x);
  double scale = 0;
  for (double v : x) scale = std::max(scale, std::fabs(v - center));
  if (scale == 0) throw NumericalError("poly_fit: all x equal");

  std::array<std::array<double, 4>, 3> a{};  // augmented normal matrix
  for (std::size_t i = 0; i < n; ++i) {
    const double z = (x[i] - center) / scale;
    std::array<double, 3> basis{1.0, z, z * z};
    for (std::size_t r = 0; r < p; ++r) {
      for (std::size_t c = 0; c < p; ++c) a[r][c] += basis[r] * basis[c];
      a[r][p] += basis[r] * y[i];
    }
  }
  double max_diag = 0;
  for (std::size_t r = 0; r < p; ++r) max_diag = std::max(max_diag, a[r][r]);
  for (std::size_t col = 0; col < p; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < p; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    }
    if (std::fabs(a[piv][col]) < 1e-12 * max_diag) {
      throw NumericalError("poly_fit: ill-conditioned normal equations (duplicate x values?)");
    }
    std::swap(a[col], a[piv]);
    for (std::size_t r = 0; r < p; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= p; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::array<double, 3> beta{};
  for (std::size_t r = 0; r < p; ++r) beta[r] = a[r][p] / a[r][r];

  // Map coefficients in z back to powers of x.
  PolyFit fit;
  fit.degree = degree;
  fit.n = n;
  const double s = scale, c0 = center;
  if (degree == 1) {
    fit.coefficients = {beta[0] - beta[1] * c0 / s, beta[1] / s};
  } else {
    fit.coefficients = {beta[0] - beta[1] * c0 / s + beta[2] * c0 * c0 / (s * s),
                        beta[1] / s - 2.0 * beta[2] * c0 / (s * s), beta[2] / (s * s)};
  }

  const double my = mean(y);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = (x[i] - center) / scale;
    const double pred = beta[0] + beta[1] * z + (degree == 2 ? beta[2] * z * z : 0.0);
    fit.sse += (y[i] - pred) * (y[i] - pred);
    fit.sst += (y[i] - my) * (y[i] - my);
  }
  fit.r2 = fit.sst > 0 ? 1.0 - fit.sse / fit.sst : 0.0;
  const double d1 = degree;
  const double d2 = static_cast<double>(n) - d1 - 1.0;
  if (fit.sse > 0) {
    fit.f_stat = ((fit.sst - fit.sse) / d1) / (fit.sse / d2);
  } else {
    fit.f_stat = INFINITY;
  }
  fit.p_value = f_test_p_value(fit.f_stat, d1, d2);
  return fit;
}

RegressionResult surplus_population_proportionality(const MacroDataset& d, double from, double to) {
  const auto sub = d.restricted(from, to);
  if (sub.size() < 4) {
    throw ValidationError("proportionality test needs at least 4 benchmark years in range, got " +
                          std::to_string(sub.size()));
  }
  const auto n = sub.population().values();
  const auto s = derive_surplus_series(sub).values();
  return ols(n, s, false);
}

}  // namespace worldsys
