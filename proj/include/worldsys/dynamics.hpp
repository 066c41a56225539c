#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "worldsys/series.hpp"

namespace worldsys {

enum class Method { euler, rk4 };

struct IntegratorSpec {
  Method method = Method::euler;
  double step = 1.0;  // years

  /// One-year difference equations, both increments from the same state.
  static IntegratorSpec euler_annual() { return {Method::euler, 1.0}; }
  static IntegratorSpec rk4(double step = 0.25) { return {Method::rk4, step}; }
};

const char* to_string(Method m);

struct SimulationOptions {
  IntegratorSpec integrator = IntegratorSpec::euler_annual();
  double stride = 1.0;  // years between stored rows; a multiple of the step
  double overflow_guard = 1e12;
};

struct TimeSpan {
  double start = 0;
  double end = 0;
};

/// dN/dt = a S N, dS/dt = b N S with b = b_ratio * a; N in millions, S in
/// dollars per person per year.
struct CompactModelParams {
  double a = 0.000011383;
  double b_ratio = 0.96;
  double m = 440.0;
  double N0 = 230.82;
  double S0 = 4.225;
  double t_start = 1;
  double t_end = 1973;

  /// ValidationError naming the first offending field.
  void validate() const;
};

/// Cobb-Douglas output G = r_tech T N^alpha with per-capita surplus
/// S = r_tech T N^(alpha-1) - m and population response dN/dt = a S N.
/// `b_or_c` is b of dT/dt = b N T (Kuznetsian) or c of dT/dt = c T
/// (exponential technology).
struct KremerParams {
  double alpha = 0.5;
  double r_tech = 1.0;
  double b_or_c = 0.0;
  double a = 1e-5;
  double m = 440.0;
  double g_bar = 445.0;
  double T0 = 1.0;
  double N0 = 1.0;

  void validate() const;
};

struct LogisticParams {
  double a1 = 0;  // birth coefficient
  double a2 = 0;  // linear death coefficient
  double b = 0;   // crowding coefficient
  double N0 = 1;

  [[nodiscard]] double carrying_capacity() const { return (a1 - a2) / b; }
  void validate() const;
};

/// dN/dt = a0 N^(1/k) N.
struct CoalitionParams {
  double a0 = 0;
  double k = 1;
  double N0 = 1;

  void validate() const;
};

enum class Termination { completed, blow_up, non_positive };

const char* to_string(Termination t);

/// Stored rows of a run. S and G are empty for population-only models, T is
/// empty for models without a technology state.
struct SimulationTrace {
  std::string model;
  IntegratorSpec integrator;
  std::vector<double> years;
  std::vector<double> N;
  std::vector<double> S;
  std::vector<double> G;
  std::vector<double> T;
  std::map<std::string, double> metadata;
  Termination termination = Termination::completed;
  std::optional<double> abort_year;  // time of the step that failed
  std::string diagnostic;

  [[nodiscard]] std::size_t size() const noexcept { return years.size(); }
  [[nodiscard]] bool has_surplus() const noexcept { return !S.empty(); }
  [[nodiscard]] bool has_technology() const noexcept { return !T.empty(); }
  [[nodiscard]] bool completed() const noexcept { return termination == Termination::completed; }
  [[nodiscard]] std::optional<std::size_t> index_of(double year) const;

  [[nodiscard]] YearValueSeries population_series() const;
  [[nodiscard]] YearValueSeries surplus_series() const;
  [[nodiscard]] YearValueSeries gdp_series() const;

  /// Values sampled at exactly the years of `reference`; ValidationError if
  /// any of those years was not stored.
  [[nodiscard]] YearValueSeries sample_population(const YearValueSeries& reference) const;
  [[nodiscard]] YearValueSeries sample_gdp(const YearValueSeries& reference) const;
};

struct CompactRates {
  double dN;  // millions per year
  double dS;  // dollars per person per year
};

/// Right-hand side a S N, b N S of the compact model; with a one-year Euler
/// step these are exactly the annual increments.
CompactRates compact_rhs(const CompactModelParams& p, double N, double S);

SimulationTrace simulate_compact(const CompactModelParams& p, const SimulationOptions& options = {});

enum class PopulationAdjustment {
  dynamic,        // N follows dN/dt = a S N
  instantaneous,  // N pinned to the equilibrium population of the current T
};

/// dN/dt = a S N, dT/dt = b N T.
SimulationTrace simulate_kuznetsian(const KremerParams& p, TimeSpan span,
                                    const SimulationOptions& options = {},
                                    PopulationAdjustment adjustment = PopulationAdjustment::dynamic);

/// Population at which output per head equals g_bar:
/// (g_bar / (r_tech T))^(1 / (alpha - 1)).
double equilibrium_population(double T, double g_bar, double alpha, double r_tech);

/// dN/dt = a S N with T(t) = T0 e^(c (t - start)).
SimulationTrace simulate_exponential_tech(const KremerParams& p, TimeSpan span,
                                          const SimulationOptions& options = {});

/// Closed-form population of the exponential-technology system, `elapsed`
/// years after the start:
///   N^(1-alpha) = e^(-(1-alpha) a m t) (C + (1-alpha) a r T0 / lambda e^(lambda t)),
///   lambda = c + (1-alpha) a m.
/// DomainError if the bracket is not positive.
double bernoulli_closed_form(const KremerParams& p, double c_integration, double elapsed);

/// Integration constant that makes the closed form start at N0.
double bernoulli_integration_constant(const KremerParams& p);

/// Per-capita surplus implied by the closed form.
double bernoulli_surplus(const KremerParams& p, double c_integration, double elapsed);

/// Long-run surplus c / ((1 - alpha) a) of the exponential-technology system.
double exponential_tech_limit_surplus(const KremerParams& p);

/// dN/dt = a1 N - (a2 N + b N^2).
SimulationTrace simulate_logistic(const LogisticParams& p, TimeSpan span,
                                  const SimulationOptions& options = {});

SimulationTrace simulate_coalition(const CoalitionParams& p, TimeSpan span,
                                   const SimulationOptions& options = {});

/// Exact singularity time of the coalition model started at `start`:
/// start + k N0^(-1/k) / a0.
double coalition_singularity_year(const CoalitionParams& p, double start);

/// `year,N_millions,S_dollars,G_billions[,T_index]`; S and G cells are left
/// empty for population-only models.
void write_trace_csv(std::ostream& out, const SimulationTrace& trace);

}  // namespace worldsys
