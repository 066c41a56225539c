#include "worldsys/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>

#include "worldsys/error.hpp"
#include "worldsys/format.hpp"

namespace worldsys {

namespace {

template <std::size_t D>
using State = std::array<double, D>;

struct Row {
  double N = 0;
  std::optional<double> S;
  std::optional<double> G;
  std::optional<double> T;
};

template <std::size_t D, class Rhs>
State<D> advance(const Rhs& rhs, const State<D>& y, double t, double h, Method method) {
  auto axpy = [](const State<D>& a, double s, const State<D>& b) {
    State<D> out;
    for (std::size_t i = 0; i < D; ++i) out[i] = a[i] + s * b[i];
    return out;
  };
  if (method == Method::euler) return axpy(y, h, rhs(t, y));
  const auto k1 = rhs(t, y);
  const auto k2 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k1));
  const auto k3 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k2));
  const auto k4 = rhs(t + h, axpy(y, h, k3));
  State<D> out;
  for (std::size_t i = 0; i < D; ++i) {
    out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

void validate_span(TimeSpan span) {
  if (!std::isfinite(span.start) || !std::isfinite(span.end)) {
    throw ValidationError("t_start and t_end must be finite");
  }
  if (!(span.start < span.end)) throw ValidationError("t_end must be after t_start");
}

long long whole_steps(double length, double h, const char* what) {
  const double q = length / h;
  const auto n = std::llround(q);
  if (n < 1 || std::fabs(q - static_cast<double>(n)) > 1e-9 * std::max(1.0, q)) {
    throw ValidationError(std::string(what) + " must be a whole multiple of the integrator step");
  }
  return n;
}

// Steps `y` over `span`, storing every stride'th row and the final one.
// `derive` maps (t, state) to the reported quantities.
template <std::size_t D, class Rhs, class Derive>
SimulationTrace run(const std::string& model, const Rhs& rhs, State<D> y, TimeSpan span,
                    const SimulationOptions& opt, const Derive& derive) {
  validate_span(span);
  const double h = opt.integrator.step;
  if (!(h > 0) || !std::isfinite(h)) throw ValidationError("integrator step must be positive");
  if (!(opt.stride > 0)) throw ValidationError("storage stride must be positive");
  const long long n_steps = whole_steps(span.end - span.start, h, "time span");
  const long long stride_steps = whole_steps(opt.stride, h, "storage stride");

  SimulationTrace trace;
  trace.model = model;
  trace.integrator = opt.integrator;

  auto store = [&](double t, const Row& row) {
    trace.years.push_back(t);
    trace.N.push_back(row.N);
    if (row.S) trace.S.push_back(*row.S);
    if (row.G) trace.G.push_back(*row.G);
    if (row.T) trace.T.push_back(*row.T);
  };
  // Returns false (and marks the trace) when the row ends the run.
  auto check = [&](double t, const Row& row) {
    const bool finite = std::isfinite(row.N) && (!row.S || std::isfinite(*row.S)) &&
                        (!row.T || std::isfinite(*row.T)) && (!row.G || std::isfinite(*row.G));
    if (!finite || row.N > opt.overflow_guard || (row.S && *row.S > opt.overflow_guard)) {
      trace.termination = Termination::blow_up;
      trace.abort_year = t;
      trace.diagnostic = "blow-up: state exceeded " + format_double(opt.overflow_guard) +
                         " or became non-finite at t=" + format_double(t);
      return false;
    }
    if (!(row.N > 0) || (row.S && !(*row.S > 0))) {
      trace.termination = Termination::non_positive;
      trace.abort_year = t;
      trace.diagnostic = std::string(!(row.N > 0) ? "population" : "surplus") +
                         " became non-positive at t=" + format_double(t);
      return false;
    }
    return true;
  };

  {
    const Row row0 = derive(span.start, y);
    if (!check(span.start, row0)) return trace;
    store(span.start, row0);
  }
  for (long long i = 1; i <= n_steps; ++i) {
    const double t_prev = span.start + static_cast<double>(i - 1) * h;
    const double t = span.start + static_cast<double>(i) * h;
    y = advance<D>(rhs, y, t_prev, h, opt.integrator.method);
    const Row row = derive(t, y);
    if (!check(t, row)) break;
    if (i % stride_steps == 0 || i == n_steps) store(t, row);
  }
  return trace;
}

void require(bool ok, const char* message) {
  if (!ok) throw ValidationError(message);
}

}  // namespace

const char* to_string(Method m) { return m == Method::rk4 ? "rk4" : "euler"; }

const char* to_string(Termination t) {
  switch (t) {
    case Termination::completed: return "completed";
    case Termination::blow_up: return "blow_up";
    case Termination::non_positive: return "non_positive";
  }
  return "unknown";
}

void CompactModelParams::validate() const {
  require(a > 0 && std::isfinite(a), "a must be positive");
  require(b_ratio > 0 && std::isfinite(b_ratio), "b_ratio must be positive");
  require(m > 0 && std::isfinite(m), "m must be positive");
  require(N0 > 0 && std::isfinite(N0), "N0 must be positive");
  require(S0 > 0 && std::isfinite(S0), "S0 must be positive");
  validate_span({t_start, t_end});
}

void KremerParams::validate() const {
  require(alpha > 0 && alpha < 1, "alpha must lie in (0, 1)");
  require(r_tech > 0 && std::isfinite(r_tech), "r_tech must be positive");
  require(b_or_c >= 0 && std::isfinite(b_or_c), "b_or_c must be non-negative");
  require(a > 0 && std::isfinite(a), "a must be positive");
  require(m > 0 && std::isfinite(m), "m must be positive");
  require(g_bar > 0 && std::isfinite(g_bar), "g_bar must be positive");
  require(T0 > 0 && std::isfinite(T0), "T0 must be positive");
  require(N0 > 0 && std::isfinite(N0), "N0 must be positive");
}

void LogisticParams::validate() const {
  require(a1 >= 0 && a2 >= 0 && std::isfinite(a1) && std::isfinite(a2),
          "a1 and a2 must be non-negative");
  require(a1 >= a2, "a1 must be at least a2");
  require(b > 0 && std::isfinite(b), "b must be positive");
  require(N0 > 0 && std::isfinite(N0), "N0 must be positive");
}

void CoalitionParams::validate() const {
  require(a0 > 0 && std::isfinite(a0), "a0 must be positive");
  require(k > 0 && k <= 1, "k must lie in (0, 1]");
  require(N0 > 0 && std::isfinite(N0), "N0 must be positive");
}

std::optional<std::size_t> SimulationTrace::index_of(double year) const {
  auto it = std::lower_bound(years.begin(), years.end(), year);
  if (it == years.end() || *it != year) return std::nullopt;
  return static_cast<std::size_t>(it - years.begin());
}

YearValueSeries SimulationTrace::population_series() const {
  return YearValueSeries::from_columns(years, N);
}

YearValueSeries SimulationTrace::surplus_series() const {
  if (!has_surplus()) throw ValidationError(model + " trace has no surplus column");
  return YearValueSeries::from_columns(years, S);
}

YearValueSeries SimulationTrace::gdp_series() const {
  if (G.empty()) throw ValidationError(model + " trace has no GDP column");
  return YearValueSeries::from_columns(years, G);
}

namespace {

YearValueSeries sample(const SimulationTrace& tr, const std::vector<double>& column,
                       const YearValueSeries& reference) {
  std::vector<Observation> pts;
  for (const auto& ref : reference) {
    const auto idx = tr.index_of(ref.year);
    if (!idx) {
      throw ValidationError(tr.model + " trace has no row for year " + format_double(ref.year) +
                            (tr.completed() ? "" : " (run aborted: " + tr.diagnostic + ")"));
    }
    pts.push_back({ref.year, column[*idx]});
  }
  return YearValueSeries(std::move(pts));
}

}  // namespace

YearValueSeries SimulationTrace::sample_population(const YearValueSeries& reference) const {
  return sample(*this, N, reference);
}

YearValueSeries SimulationTrace::sample_gdp(const YearValueSeries& reference) const {
  if (G.empty()) throw ValidationError(model + " trace has no GDP column");
  return sample(*this, G, reference);
}

CompactRates compact_rhs(const CompactModelParams& p, double N, double S) {
  const double ns = N * S;
  return {p.a * ns, p.b_ratio * p.a * ns};
}

SimulationTrace simulate_compact(const CompactModelParams& p, const SimulationOptions& options) {
  p.validate();
  auto rhs = [&p](double, const State<2>& y) {
    const auto r = compact_rhs(p, y[0], y[1]);
    return State<2>{r.dN, r.dS};
  };
  auto derive = [m = p.m](double, const State<2>& y) {
    return Row{y[0], y[1], (m * y[0] + y[1] * y[0]) / 1000.0, std::nullopt};
  };
  auto trace = run<2>("compact", rhs, State<2>{p.N0, p.S0}, {p.t_start, p.t_end}, options, derive);
  trace.metadata = {{"a", p.a},   {"b_ratio", p.b_ratio}, {"m", p.m},          {"N0", p.N0},
                    {"S0", p.S0}, {"t_start", p.t_start}, {"t_end", p.t_end}};
  return trace;
}

double equilibrium_population(double T, double g_bar, double alpha, double r_tech) {
  if (alpha == 1.0) throw DomainError("equilibrium_population: alpha = 1 has no equilibrium");
  if (!(T > 0) || !(g_bar > 0) || !(r_tech > 0)) {
    throw DomainError("equilibrium_population: T, g_bar and r_tech must be positive");
  }
  return std::pow(g_bar / (r_tech * T), 1.0 / (alpha - 1.0));
}

namespace {

std::map<std::string, double> kremer_metadata(const KremerParams& p, TimeSpan span) {
  return {{"alpha", p.alpha}, {"r_tech", p.r_tech}, {"b_or_c", p.b_or_c}, {"a", p.a},
          {"m", p.m},         {"g_bar", p.g_bar},   {"T0", p.T0},         {"N0", p.N0},
          {"t_start", span.start}, {"t_end", span.end}};
}

}  // namespace

SimulationTrace simulate_kuznetsian(const KremerParams& p, TimeSpan span,
                                    const SimulationOptions& options,
                                    PopulationAdjustment adjustment) {
  p.validate();
  const double b = p.b_or_c;
  SimulationTrace trace;
  if (adjustment == PopulationAdjustment::dynamic) {
    auto surplus = [&p](double n, double tech) {
      return p.r_tech * tech * std::pow(n, p.alpha - 1.0) - p.m;
    };
    auto rhs = [&](double, const State<2>& y) {
      return State<2>{p.a * surplus(y[0], y[1]) * y[0], b * y[0] * y[1]};
    };
    auto derive = [&](double, const State<2>& y) {
      const double s = surplus(y[0], y[1]);
      return Row{y[0], s, (p.m + s) * y[0] / 1000.0, y[1]};
    };
    trace = run<2>("kuznetsian", rhs, State<2>{p.N0, p.T0}, span, options, derive);
  } else {
    const double s = p.g_bar - p.m;
    auto pop = [&p](double tech) { return equilibrium_population(tech, p.g_bar, p.alpha, p.r_tech); };
    auto rhs = [&](double, const State<1>& y) { return State<1>{b * pop(y[0]) * y[0]}; };
    auto derive = [&](double, const State<1>& y) {
      const double n = pop(y[0]);
      return Row{n, s, (p.m + s) * n / 1000.0, y[0]};
    };
    trace = run<1>("kuznetsian_instantaneous", rhs, State<1>{p.T0}, span, options, derive);
  }
  trace.metadata = kremer_metadata(p, span);
  return trace;
}

SimulationTrace simulate_exponential_tech(const KremerParams& p, TimeSpan span,
                                          const SimulationOptions& options) {
  p.validate();
  const double c = p.b_or_c;
  auto tech = [&](double t) { return p.T0 * std::exp(c * (t - span.start)); };
  auto surplus = [&](double t, double n) { return p.r_tech * tech(t) * std::pow(n, p.alpha - 1.0) - p.m; };
  auto rhs = [&](double t, const State<1>& y) { return State<1>{p.a * surplus(t, y[0]) * y[0]}; };
  auto derive = [&](double t, const State<1>& y) {
    const double s = surplus(t, y[0]);
    return Row{y[0], s, (p.m + s) * y[0] / 1000.0, tech(t)};
  };
  auto trace = run<1>("exptech", rhs, State<1>{p.N0}, span, options, derive);
  trace.metadata = kremer_metadata(p, span);
  return trace;
}

namespace {

double bernoulli_rate(const KremerParams& p) { return p.b_or_c + (1.0 - p.alpha) * p.a * p.m; }

double bernoulli_coefficient(const KremerParams& p) {
  return (1.0 - p.alpha) * p.a * p.r_tech * p.T0 / bernoulli_rate(p);
}

}  // namespace

double bernoulli_closed_form(const KremerParams& p, double c_integration, double elapsed) {
  p.validate();
  const double lambda = bernoulli_rate(p);
  const double bracket = c_integration + bernoulli_coefficient(p) * std::exp(lambda * elapsed);
  if (!(bracket > 0)) {
    throw DomainError("bernoulli_closed_form: non-positive bracket (inconsistent integration constant)");
  }
  const double one_minus_alpha = 1.0 - p.alpha;
  const double log_n_pow =
      -one_minus_alpha * p.a * p.m * elapsed + std::log(bracket);
  return std::exp(log_n_pow / one_minus_alpha);
}

double bernoulli_integration_constant(const KremerParams& p) {
  p.validate();
  return std::pow(p.N0, 1.0 - p.alpha) - bernoulli_coefficient(p);
}

double bernoulli_surplus(const KremerParams& p, double c_integration, double elapsed) {
  p.validate();
  const double lambda = bernoulli_rate(p);
  const double denom = c_integration / (p.r_tech * p.T0) * std::exp(-lambda * elapsed) +
                       (1.0 - p.alpha) * p.a / lambda;
  if (!(denom > 0)) throw DomainError("bernoulli_surplus: non-positive bracket");
  return 1.0 / denom - p.m;
}

double exponential_tech_limit_surplus(const KremerParams& p) {
  p.validate();
  return p.b_or_c / ((1.0 - p.alpha) * p.a);
}

SimulationTrace simulate_logistic(const LogisticParams& p, TimeSpan span,
                                  const SimulationOptions& options) {
  p.validate();
  auto rhs = [&p](double, const State<1>& y) {
    return State<1>{p.a1 * y[0] - (p.a2 * y[0] + p.b * y[0] * y[0])};
  };
  auto derive = [](double, const State<1>& y) { return Row{y[0], std::nullopt, std::nullopt, std::nullopt}; };
  auto trace = run<1>("logistic", rhs, State<1>{p.N0}, span, options, derive);
  trace.metadata = {{"a1", p.a1}, {"a2", p.a2}, {"b", p.b}, {"N0", p.N0},
                    {"K", p.carrying_capacity()}, {"t_start", span.start}, {"t_end", span.end}};
  return trace;
}

SimulationTrace simulate_coalition(const CoalitionParams& p, TimeSpan span,
                                   const SimulationOptions& options) {
  p.validate();
  const double inv_k = 1.0 / p.k;
  auto rhs = [&p, inv_k](double, const State<1>& y) {
    return State<1>{p.a0 * std::pow(y[0], inv_k) * y[0]};
  };
  auto derive = [](double, const State<1>& y) { return Row{y[0], std::nullopt, std::nullopt, std::nullopt}; };
  auto trace = run<1>("coalition", rhs, State<1>{p.N0}, span, options, derive);
  trace.metadata = {{"a0", p.a0}, {"k", p.k}, {"N0", p.N0}, {"t_start", span.start}, {"t_end", span.end}};
  return trace;
}

double coalition_singularity_year(const CoalitionParams& p, double start) {
  p.validate();
  return start + p.k * std::pow(p.N0, -1.0 / p.k) / p.a0;
}

void write_trace_csv(std::ostream& out, const SimulationTrace& trace) {
  out << "year,N_millions,S_dollars,G_billions";
  if (trace.has_technology()) out << ",T_index";
  out << '\n';
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out << format_double(trace.years[i]) << ',' << format_double(trace.N[i]) << ',';
    if (trace.has_surplus()) out << format_double(trace.S[i]);
    out << ',';
    if (!trace.G.empty()) out << format_double(trace.G[i]);
    if (trace.has_technology()) out << ',' << format_double(trace.T[i]);
    out << '\n';
  }
}

}  // namespace worldsys
