#include "worldsys/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "golden.hpp"
#include "worldsys/error.hpp"
#include "worldsys/format.hpp"
#include "worldsys/stats.hpp"

namespace worldsys {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Problem {
  std::vector<double> t;
  std::vector<double> v;
  double v_mean = 0;
  double sst = 0;

  explicit Problem(const YearValueSeries& s) : t(s.years()), v(s.values()) {
    v_mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    for (double x : v) sst += (x - v_mean) * (x - v_mean);
  }
};

void basis(const Problem& pr, double t0, double k, std::vector<double>& u) {
  u.resize(pr.t.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double gap = t0 - pr.t[i];
    u[i] = k == 1.0 ? 1.0 / gap : std::pow(gap, -k);
  }
}

// Lower is better for both objectives.
double objective_value(const Problem& pr, double t0, double k, Objective obj) {
  thread_local std::vector<double> u;
  basis(pr, t0, k, u);
  const std::size_t n = u.size();
  if (obj == Objective::least_squares) {
    double suv = 0, suu = 0;
    for (std::size_t i = 0; i < n; ++i) {
      suv += u[i] * pr.v[i];
      suu += u[i] * u[i];
    }
    if (!(suu > 0) || !std::isfinite(suu)) return kInf;
    const double c = suv / suu;
    double sse = 0;
    for (std::size_t i = 0; i < n; ++i) sse += (pr.v[i] - c * u[i]) * (pr.v[i] - c * u[i]);
    return std::isfinite(sse) ? sse : kInf;
  }
  // Max correlation == min residual of the affine regression of v on u,
  // restricted to positive association.
  const double u_mean = std::accumulate(u.begin(), u.end(), 0.0) / static_cast<double>(n);
  double suu = 0, suv = 0;
  for (std::size_t i = 0; i < n; ++i) {
    suu += (u[i] - u_mean) * (u[i] - u_mean);
    suv += (u[i] - u_mean) * (pr.v[i] - pr.v_mean);
  }
  if (!std::isfinite(suu) || !std::isfinite(suv)) return kInf;
  if (!(suu > 0) || !(suv > 0)) return pr.sst;
  const double beta = suv / suu;
  double sse = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = (pr.v[i] - pr.v_mean) - beta * (u[i] - u_mean);
    sse += e * e;
  }
  return std::isfinite(sse) ? sse : kInf;
}

struct Candidate {
  double t0;
  double k;
  double value;
};

Candidate best_for_t0(const Problem& pr, double t0, const FitOptions& o) {
  if (o.k) return {t0, *o.k, objective_value(pr, t0, *o.k, o.objective)};
  auto m = detail::golden_section([&](double k) { return objective_value(pr, t0, k, o.objective); },
                                  o.k_min, o.k_max, o.k_tolerance);
  return {t0, m.x, m.value};
}

}  // namespace

const char* to_string(Convention c) {
  return c == Convention::integer_t0 ? "integer_t0" : "continuous_t0";
}

const char* to_string(Objective o) {
  return o == Objective::least_squares ? "least_squares" : "max_correlation";
}

double solve_scale_given_t0(const YearValueSeries& s, double t0, double k) {
  if (s.empty()) throw ValidationError("solve_scale_given_t0: empty series");
  if (!(k > 0)) throw DomainError("solve_scale_given_t0: k must be positive");
  if (!(t0 > s.last_year())) throw DomainError("solve_scale_given_t0: t0 must exceed the last year");
  double suv = 0, suu = 0;
  for (const auto& p : s) {
    const double u = std::pow(t0 - p.year, -k);
    suv += u * p.value;
    suu += u * u;
  }
  if (!(suu > 0)) throw NumericalError("solve_scale_given_t0: degenerate basis");
  return suv / suu;
}

GoodnessOfFit goodness_of_fit(const YearValueSeries& observed, const YearValueSeries& predicted) {
  if (!observed.same_years(predicted)) throw ValidationError("goodness_of_fit: year sets differ");
  const auto obs = observed.values();
  const auto pred = predicted.values();
  const double mean = std::accumulate(obs.begin(), obs.end(), 0.0) / static_cast<double>(obs.size());
  GoodnessOfFit g;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    g.sse += (obs[i] - pred[i]) * (obs[i] - pred[i]);
    g.sst += (obs[i] - mean) * (obs[i] - mean);
  }
  if (!(g.sst > 0)) throw ValidationError("goodness_of_fit: observed series has zero variance");
  g.r2 = 1.0 - g.sse / g.sst;
  const bool pred_constant =
      std::all_of(pred.begin(), pred.end(), [&](double p) { return p == pred.front(); });
  g.r = (obs.size() >= 3 && !pred_constant) ? pearson(pred, obs) : 0.0;
  g.r2_pearson = g.r * g.r;
  return g;
}

TrendFit evaluate_trend(const YearValueSeries& s, const TrendParams& params, Convention convention) {
  const auto years = s.years();
  const auto fitted = eval_trend_series(params, years);
  const auto g = goodness_of_fit(s, fitted);
  TrendFit fit;
  fit.params = params;
  fit.sse = g.sse;
  fit.sst = g.sst;
  fit.r = g.r;
  fit.r2 = g.r2;
  fit.r2_pearson = g.r2_pearson;
  fit.convention = convention;
  fit.residuals.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) fit.residuals.push_back(s[i].value - fitted[i].value);
  return fit;
}

TrendFit fit_trend(const YearValueSeries& s, const FitOptions& o) {
  if (s.size() < 3) throw ValidationError("fit_trend: need at least 3 points");
  if (!s.all_positive()) throw ValidationError("fit_trend: series must be strictly positive");
  if (o.k && !(*o.k > 0)) throw DomainError("fit_trend: k must be positive");
  if (!(o.horizon >= 1)) throw DomainError("fit_trend: horizon must be at least one year");
  if (!o.k && !(o.k_min > 0 && o.k_max > o.k_min)) throw DomainError("fit_trend: bad k range");

  const Problem pr(s);
  const double last = s.last_year();
  const double grid_start = std::floor(last);
  const int steps = static_cast<int>(std::floor(o.horizon));

  // Ascending scan with strict improvement: ties keep the smallest t0.
  Candidate best{0, 0, kInf};
  int best_index = -1;
  for (int j = 1; j <= steps; ++j) {
    const auto c = best_for_t0(pr, grid_start + j, o);
    if (std::isfinite(c.value) && c.value < best.value) {
      best = c;
      best_index = j;
    }
  }
  if (best_index < 0) {
    throw NumericalError("fit_trend: objective non-finite across the whole t0 bracket");
  }

  std::vector<std::string> warnings;
  if (best_index == steps) {
    warnings.push_back("best t0 reached the search horizon (" + format_double(grid_start + steps) +
                       "); series may not be blow-up shaped");
  }

  if (o.convention == Convention::continuous_t0) {
    const double lo = std::max(best.t0 - 1.0, last + 1e-6);
    const double hi = std::min(best.t0 + 1.0, grid_start + steps);
    Candidate refined = best;
    auto m = detail::golden_section(
        [&](double t0) {
          const auto c = best_for_t0(pr, t0, o);
          if (c.value < refined.value) refined = c;
          return c.value;
        },
        lo, hi, o.t0_tolerance);
    (void)m;
    best = refined;
  }

  TrendParams p{solve_scale_given_t0(s, best.t0, best.k), best.t0, best.k};
  TrendFit fit = evaluate_trend(s, p, o.convention);
  fit.objective = o.objective;
  fit.k_free = !o.k.has_value();
  fit.warnings = std::move(warnings);
  return fit;
}

}  // namespace worldsys
