#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "worldsys/dynamics.hpp"
#include "worldsys/error.hpp"
#include "worldsys/fitting.hpp"
#include "worldsys/stats.hpp"

using namespace worldsys;
using testing::rel_err;

namespace {

SimulationOptions rk4(double step = 0.25, double stride = 1) { return {IntegratorSpec::rk4(step), stride}; }

SimulationOptions euler(double step) { return {{Method::euler, step}, 1.0}; }

// Balanced Kremer economy: starts on the equilibrium population with g = 445.
KremerParams balanced(double a, double tech) {
  KremerParams p;
  p.alpha = 0.5;
  p.r_tech = 1;
  p.g_bar = 445;
  p.m = 440;
  p.N0 = 230;
  p.T0 = p.g_bar * std::sqrt(p.N0) / p.r_tech;
  p.a = a;
  p.b_or_c = tech;
  return p;
}

KremerParams exptech(double c, double N0, double T0) {
  KremerParams p;
  p.alpha = 0.5;
  p.r_tech = 1;
  p.a = 1e-4;
  p.m = 440;
  p.b_or_c = c;
  p.N0 = N0;
  p.T0 = T0;
  return p;
}

void check_gdp_identity(const SimulationTrace& tr, double m) {
  REQUIRE(tr.G.size() == tr.size());
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const double lhs = 1000 * tr.G[i];
    CHECK(std::fabs(lhs - (m * tr.N[i] + tr.S[i] * tr.N[i])) <= 1e-9 * lhs);
  }
}

void check_positive(const SimulationTrace& tr) {
  for (double n : tr.N) CHECK(n > 0);
  for (double s : tr.S) CHECK(s > 0);
}

}  // namespace

TEST_CASE("compact model: first Euler step") {
  CompactModelParams p;
  p.t_end = 2;
  const SimulationTrace tr = simulate_compact(p);
  REQUIRE(tr.size() == 2);
  const double a = 0.000011383;
  const double n1 = 230.82 + a * 4.225 * 230.82;
  const double s1 = 4.225 + 0.96 * a * 230.82 * 4.225;
  CHECK(tr.N[1] == doctest::Approx(n1).epsilon(1e-15));
  CHECK(tr.S[1] == doctest::Approx(s1).epsilon(1e-15));
  CHECK(tr.N[1] == doctest::Approx(230.8311).epsilon(1e-6));
  CHECK(tr.S[1] == doctest::Approx(4.23566).epsilon(1e-5));
  CHECK(tr.G[0] == doctest::Approx((440 * 230.82 + 4.225 * 230.82) / 1000).epsilon(1e-15));
  CHECK(tr.completed());
  CHECK(tr.metadata.at("a") == a);
}

TEST_CASE("compact model: vanishing surplus") {
  CompactModelParams p;
  p.S0 = 1e-9;
  p.t_start = 0;
  p.t_end = 1000;
  const SimulationTrace tr = simulate_compact(p);
  REQUIRE(tr.completed());
  for (double n : tr.N) CHECK(rel_err(n, p.N0) < 1e-6);
  const double rate = std::log(tr.S.back() / tr.S.front()) / 1000;
  CHECK(rate == doctest::Approx(0.96 * p.a * p.N0).epsilon(1e-3));
}

TEST_CASE("compact model: per-step increment ratio") {
  CompactModelParams p;
  p.t_end = 1500;
  const SimulationTrace tr = simulate_compact(p);
  REQUIRE(tr.completed());
  for (std::size_t i = 0; i + 1 < tr.size(); ++i) {
    const CompactRates inc = compact_rhs(p, tr.N[i], tr.S[i]);
    CHECK(std::fabs(inc.dN / inc.dS - 1 / 0.96) <= 1e-12 * (1 / 0.96));
    // the trace is exactly state + increment, both from step i
    CHECK(tr.N[i + 1] == tr.N[i] + inc.dN);
    CHECK(tr.S[i + 1] == tr.S[i] + inc.dS);
    // differencing the stored values loses up to half an ulp of N
    const double ratio = (tr.N[i + 1] - tr.N[i]) / (tr.S[i + 1] - tr.S[i]);
    CHECK(std::fabs(ratio - 1 / 0.96) <= 1e-10);
  }
  check_gdp_identity(tr, p.m);
  check_positive(tr);
}

TEST_CASE("compact model: published constants blow up before 1973") {
  // Reported honestly: the run stops at the overflow guard long before the
  // modern benchmark years.
  const SimulationTrace tr = simulate_compact(CompactModelParams{});
  CHECK(tr.termination == Termination::blow_up);
  REQUIRE(tr.abort_year.has_value());
  CHECK(*tr.abort_year > 1500);
  CHECK(*tr.abort_year < 1700);
  CHECK(tr.diagnostic.find("blow-up") != std::string::npos);
  CHECK(tr.years.back() < *tr.abort_year);
  check_positive(tr);
  const auto bench = testing::benchmarks();
  CHECK_THROWS_AS((void)tr.sample_gdp(bench.gdp()), ValidationError);
}

TEST_CASE("compact model: Euler converges at first order") {
  CompactModelParams p;
  p.t_end = 1500;
  const SimulationTrace ref = simulate_compact(p, rk4(0.125));
  std::vector<double> err;
  for (double h : {1.0, 0.5, 0.25, 0.125}) {
    const SimulationTrace tr = simulate_compact(p, euler(h));
    err.push_back(std::fabs(tr.N.back() - ref.N.back()));
  }
  for (std::size_t i = 0; i + 1 < err.size(); ++i) {
    CHECK(std::log2(err[i] / err[i + 1]) == doctest::Approx(1.0).epsilon(0.3));
  }
}

TEST_CASE("trend ODE: Euler and RK4 convergence orders") {
  const TrendParams trend{163158.78, 2014, 1};
  const CoalitionParams p{1 / trend.C, 1, eval_trend(trend, 1)};
  const double exact = eval_trend(trend, 1973);
  auto order = [&](Method method, std::vector<double> steps) {
    std::vector<double> err;
    for (double h : steps) {
      const SimulationTrace tr = simulate_coalition(p, {1, 1973}, {{method, h}, 1972});
      REQUIRE(tr.completed());
      err.push_back(std::fabs(tr.N.back() - exact));
    }
    std::vector<double> orders;
    for (std::size_t i = 0; i + 1 < err.size(); ++i) orders.push_back(std::log2(err[i] / err[i + 1]));
    return orders;
  };
  for (double o : order(Method::euler, {0.5, 0.25, 0.125, 0.0625})) CHECK(o == doctest::Approx(1).epsilon(0.3));
  for (double o : order(Method::rk4, {4, 2, 1, 0.5})) CHECK(std::fabs(o - 4) <= 0.3);
}

TEST_CASE("coalition model") {
  SUBCASE("k = 1 follows the hyperbola") {
    const TrendParams trend{1000, 2000, 1};
    const CoalitionParams p{1 / trend.C, 1, eval_trend(trend, 1000)};
    const SimulationTrace tr = simulate_coalition(p, {1000, 1950}, rk4(0.05));
    REQUIRE(tr.completed());
    for (std::size_t i = 0; i < tr.size(); ++i) {
      CHECK(rel_err(tr.N[i], eval_trend(trend, tr.years[i])) < 1e-8);
    }
    CHECK(coalition_singularity_year(p, 1000) == doctest::Approx(2000).epsilon(1e-12));
  }
  SUBCASE("unit population grows by a0 on the first step") {
    for (double k : {0.05, 0.5, 1.0}) {
      const SimulationTrace tr = simulate_coalition({1e-3, k, 1}, {0, 1}, euler(1));
      CHECK(tr.N[1] - 1 == doctest::Approx(1e-3).epsilon(1e-12));
    }
  }
  SUBCASE("published constants reach the singularity the closed form predicts") {
    // persons, starting from the 1960 world population
    const CoalitionParams p{5.5e-12, 0.99, 3.02e9};
    const double t_sing = coalition_singularity_year(p, 1960);
    const SimulationTrace tr = simulate_coalition(p, {1960, 2100}, rk4(1.0 / 64));
    CHECK(tr.termination == Termination::blow_up);
    REQUIRE(tr.abort_year.has_value());
    CHECK(*tr.abort_year <= t_sing);
    CHECK(*tr.abort_year > t_sing - 0.5);
    CHECK(tr.S.empty());
    CHECK(tr.G.empty());
  }
  CHECK_THROWS_AS(simulate_coalition({5.5e-12, 1.5, 1}, {0, 1}), ValidationError);
  CHECK_THROWS_AS(simulate_coalition({5.5e-12, 0, 1}, {0, 1}), ValidationError);
  CHECK_THROWS_AS(simulate_coalition({0, 1, 1}, {0, 1}), ValidationError);
}

TEST_CASE("logistic model") {
  const LogisticParams base{0.05, 0.01, 1e-4, 1};
  const double K = base.carrying_capacity();
  const double r = base.a1 - base.a2;
  CHECK(K == doctest::Approx(400));

  LogisticParams fixed = base;
  fixed.N0 = K;
  const SimulationTrace flat = simulate_logistic(fixed, {0, 300}, rk4());
  for (double n : flat.N) CHECK(n == doctest::Approx(K).epsilon(1e-12));

  LogisticParams half = base;
  half.N0 = K / 2;
  const double t_end = 20 / r;
  const SimulationTrace tr = simulate_logistic(half, {0, t_end}, rk4(0.25, 0.25));
  for (std::size_t i = 1; i < tr.size(); ++i) CHECK(tr.N[i] > tr.N[i - 1]);
  CHECK(std::fabs(tr.N.back() - K) < 1e-3 * K);
  for (std::size_t i = 0; i < tr.size(); i += 40) {
    const double exact = K / (1 + std::exp(-r * tr.years[i]));
    CHECK(rel_err(tr.N[i], exact) < 1e-9);
  }

  const SimulationTrace decay = simulate_logistic({0.02, 0.02, 1e-4, 100}, {0, 200}, rk4());
  for (std::size_t i = 1; i < decay.size(); ++i) CHECK(decay.N[i] < decay.N[i - 1]);

  CHECK_THROWS_AS(simulate_logistic({0.01, 0.02, 1e-4, 1}, {0, 1}), ValidationError);
  CHECK_THROWS_AS(simulate_logistic({0.05, 0.01, 0, 1}, {0, 1}), ValidationError);
}

TEST_CASE("equilibrium population") {
  CHECK(equilibrium_population(2, 445, 0.5, 1) / equilibrium_population(1, 445, 0.5, 1) ==
        doctest::Approx(4).epsilon(1e-14));
  CHECK(equilibrium_population(445, 445, 0.3, 1) == doctest::Approx(1));
  CHECK(equilibrium_population(10, 5, 0.999, 1) > 1e300);
  CHECK_THROWS_AS(equilibrium_population(1, 445, 1.0, 1), DomainError);
  const double prev = equilibrium_population(100, 445, 0.5, 1);
  CHECK(equilibrium_population(101, 445, 0.5, 1) > prev);
}

TEST_CASE("Kuznetsian system") {
  SUBCASE("frozen technology saturates") {
    const KremerParams p = balanced(1e-4, 0);
    const SimulationTrace tr = simulate_kuznetsian(p, {0, 800}, rk4());
    REQUIRE(tr.completed());
    for (std::size_t i = 1; i < tr.size(); ++i) CHECK(tr.N[i] > tr.N[i - 1]);
    const double n_star = std::pow(p.r_tech * p.T0 / p.m, 1 / (1 - p.alpha));
    CHECK(rel_err(tr.N.back(), n_star) < 1e-6);
    CHECK(tr.S.back() < 1e-6 * tr.S.front());
    for (double t : tr.T) CHECK(t == p.T0);

    // same system with exponential technology at c = 0
    const SimulationTrace ex = simulate_exponential_tech(p, {0, 800}, rk4());
    REQUIRE(ex.size() == tr.size());
    for (std::size_t i = 0; i < tr.size(); ++i) CHECK(rel_err(ex.N[i], tr.N[i]) < 1e-12);
  }
  SUBCASE("surplus tracks population on a balanced run") {
    const KremerParams p = balanced(1e-4, 0.5 / (230 * 2000));
    const SimulationTrace tr = simulate_kuznetsian(p, {0, 1800}, rk4());
    REQUIRE(tr.completed());
    const std::size_t burn = tr.size() / 10;
    const std::vector<double> s(tr.S.begin() + burn, tr.S.end());
    const std::vector<double> n(tr.N.begin() + burn, tr.N.end());
    CHECK(pearson(s, n) > 0.99);
    check_gdp_identity(tr, p.m);
    check_positive(tr);
  }
  SUBCASE("instantaneous adjustment gives hyperbolic population growth") {
    const KremerParams p = balanced(1e-4, 0.5 / (230 * 2000));
    const SimulationTrace tr =
        simulate_kuznetsian(p, {0, 1800}, rk4(0.125), PopulationAdjustment::instantaneous);
    REQUIRE(tr.completed());
    std::vector<double> q;
    for (std::size_t i = 1; i + 1 < tr.size(); ++i) {
      const double dn = (tr.N[i + 1] - tr.N[i - 1]) / (tr.years[i + 1] - tr.years[i - 1]);
      q.push_back(dn / (tr.N[i] * tr.N[i]));
    }
    const auto [lo, hi] = std::minmax_element(q.begin(), q.end());
    CHECK(*hi / *lo - 1 < 0.01);
    CHECK(q.front() == doctest::Approx(p.b_or_c / (1 - p.alpha)).epsilon(0.01));
    for (double s : tr.S) CHECK(s == doctest::Approx(p.g_bar - p.m));
    check_gdp_identity(tr, p.m);
  }
  SUBCASE("an over-populated start hits the Malthusian floor") {
    KremerParams p = balanced(1e-4, 0);
    p.N0 = 300;  // T0 stays at the 230-million equilibrium
    const SimulationTrace tr = simulate_kuznetsian(p, {0, 100}, rk4());
    CHECK(tr.termination == Termination::non_positive);
    CHECK(tr.size() == 0);
    CHECK(tr.diagnostic.find("surplus") != std::string::npos);
  }
  CHECK_THROWS_AS(simulate_kuznetsian(balanced(1e-4, 0), {100, 0}), ValidationError);
  KremerParams bad = balanced(1e-4, 0);
  bad.alpha = 1;
  CHECK_THROWS_AS(simulate_kuznetsian(bad, {0, 1}), ValidationError);
}

TEST_CASE("exponential technology: closed form") {
  const KremerParams p = exptech(0.01, 100, 445 * 10);
  const double C = bernoulli_integration_constant(p);
  CHECK(bernoulli_closed_form(p, C, 0) == doctest::Approx(p.N0).epsilon(1e-14));

  const SimulationTrace tr = simulate_exponential_tech(p, {0, 500}, rk4(0.25));
  REQUIRE(tr.completed());
  for (std::size_t i = 0; i < tr.size(); ++i) {
    CHECK(rel_err(tr.N[i], bernoulli_closed_form(p, C, tr.years[i])) < 1e-6);
    CHECK(rel_err(tr.S[i], bernoulli_surplus(p, C, tr.years[i])) < 1e-6);
  }
  check_gdp_identity(tr, p.m);
  check_positive(tr);

  CHECK_THROWS_AS(bernoulli_closed_form(p, -1e9, 0), DomainError);
}

TEST_CASE("exponential technology: limiting surplus") {
  const KremerParams p = exptech(0.01, 100, 4450);
  const double limit = exponential_tech_limit_surplus(p);
  CHECK(limit == doctest::Approx(0.01 / (0.5 * 1e-4)));
  CHECK(exponential_tech_limit_surplus(exptech(0.02, 100, 4450)) == doctest::Approx(2 * limit));

  const double lambda = p.b_or_c + (1 - p.alpha) * p.a * p.m;
  const double t_end = std::ceil(std::log(1e6) / lambda);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> n0(50, 500);
  std::uniform_real_distribution<double> excess(1, 100);
  for (int trial = 0; trial < 10; ++trial) {
    // any start with positive surplus: g0 = m + excess
    const double N0 = n0(rng);
    const double T0 = (p.m + excess(rng)) * std::sqrt(N0);
    const KremerParams q = exptech(p.b_or_c, N0, T0);
    const SimulationTrace tr = simulate_exponential_tech(q, {0, t_end}, rk4());
    REQUIRE(tr.completed());
    CHECK(rel_err(tr.S.back(), limit) < 1e-3);
    const double C = bernoulli_integration_constant(q);
    CHECK(rel_err(bernoulli_surplus(q, C, 5 * t_end), limit) < 1e-6);
  }
}

TEST_CASE("storage stride and trace output") {
  CompactModelParams p;
  p.t_end = 101;
  const SimulationTrace tr = simulate_compact(p, {IntegratorSpec::euler_annual(), 10});
  REQUIRE(tr.size() == 11);
  CHECK(tr.years[1] == 11);
  CHECK(tr.years.back() == 101);
  CHECK(tr.index_of(51).value() == 5);
  CHECK_FALSE(tr.index_of(52).has_value());
  CHECK_THROWS_AS(simulate_compact(p, {IntegratorSpec::rk4(0.3), 1}), ValidationError);
  CHECK_THROWS_AS(simulate_compact(p, {IntegratorSpec::rk4(0.25), 0.1}), ValidationError);

  std::ostringstream csv;
  write_trace_csv(csv, tr);
  CHECK(csv.str().rfind("year,N_millions,S_dollars,G_billions\n1,230.82,4.225,", 0) == 0);

  std::ostringstream lcsv;
  write_trace_csv(lcsv, simulate_logistic({0.05, 0.01, 1e-4, 1}, {0, 2}, rk4()));
  CHECK(lcsv.str().rfind("year,N_millions,S_dollars,G_billions\n0,1,,\n", 0) == 0);

  std::ostringstream kcsv;
  write_trace_csv(kcsv, simulate_kuznetsian(balanced(1e-4, 0), {0, 1}, rk4()));
  CHECK(kcsv.str().rfind("year,N_millions,S_dollars,G_billions,T_index\n", 0) == 0);
}

TEST_CASE("compact parameter validation") {
  CompactModelParams p;
  p.t_end = 0;
  CHECK_THROWS_WITH_AS(simulate_compact(p), doctest::Contains("t_end"), ValidationError);
  p = CompactModelParams{};
  p.S0 = 0;
  CHECK_THROWS_WITH_AS(simulate_compact(p), doctest::Contains("S0"), ValidationError);
  p = CompactModelParams{};
  p.a = -1;
  CHECK_THROWS_WITH_AS(simulate_compact(p), doctest::Contains("a must"), ValidationError);
}
