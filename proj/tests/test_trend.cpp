#include <doctest.h>

#include <cmath>

#include "worldsys/error.hpp"
#include "worldsys/trend.hpp"

using namespace worldsys;

TEST_CASE("trend evaluation") {
  CHECK(eval_trend({163158.78, 2014, 1}, 1973) == doctest::Approx(163158.78 / 41).epsilon(1e-15));
  CHECK(eval_trend({163158.78, 2014, 1}, 1973) == doctest::Approx(3979.5).epsilon(1e-4));
  CHECK(eval_trend({1000, 2000, 1}, 1000) == 1.0);
  CHECK(eval_trend({17355487.3, 2005.56, 2}, 1973) ==
        doctest::Approx(17355487.3 / (32.56 * 32.56)).epsilon(1e-13));
}

TEST_CASE("trend is not evaluable at or past the singularity") {
  CHECK_THROWS_AS(eval_trend({17355487.3, 2005.56, 2}, 2005.56), DomainError);
  CHECK_THROWS_AS(eval_trend({1000, 2000, 1}, 2100), DomainError);
  CHECK_THROWS_AS(eval_trend_series({1000, 2000, 1}, std::vector<double>{1990, 2000}), DomainError);
}

TEST_CASE("trend ODE right-hand side") {
  CHECK(trend_ode_rhs({100, 0, 1}, 10) == 1.0);
  CHECK(trend_ode_rhs({163158.78, 2014, 1}, 3979.5) == doctest::Approx(3979.5 * 3979.5 / 163158.78));
  CHECK(trend_ode_rhs({163158.78, 2014, 1}, 3979.5) == doctest::Approx(97.06).epsilon(1e-3));
  CHECK(trend_ode_rhs({1, 0, 1}, 0) == 0);
  CHECK_THROWS_AS(trend_ode_rhs({1, 0, 2}, 1), DomainError);
}

TEST_CASE("the closed form solves the ODE") {
  const TrendParams p{163158.78, 2014, 1};
  for (double t : {1.0, 1000.0, 1900.0, 1990.0}) {
    const double h = 1e-4;
    const double deriv = (eval_trend(p, t + h) - eval_trend(p, t - h)) / (2 * h);
    CHECK(deriv == doctest::Approx(trend_ode_rhs(p, eval_trend(p, t))).epsilon(1e-7));
  }
}

TEST_CASE("monotone increasing before t0") {
  for (double k : {0.5, 1.0, 2.0, 3.3}) {
    const TrendParams p{50, 2000, k};
    double prev = eval_trend(p, -5000);
    for (double t = -4990; t < 2000; t += 10) {
      const double v = eval_trend(p, t);
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("log trend is linear in log(t0 - t) with slope -k") {
  for (double k : {0.99, 1.0, 2.0}) {
    const TrendParams p{17355487.3, 2005.56, k};
    const double t1 = 1000;
    for (double t2 : {1500.0, 1900.0, 2000.0}) {
      const double slope = (std::log(eval_trend(p, t2)) - std::log(eval_trend(p, t1))) /
                           (std::log(p.t0 - t2) - std::log(p.t0 - t1));
      CHECK(slope == doctest::Approx(-k).epsilon(1e-12));
    }
  }
  // quadratic trend expressed through the simple one
  const double c1 = 1234.5;
  const double c2 = 17355487.3;
  for (double t : {1.0, 1500.0, 1973.0}) {
    const double simple = eval_trend({c1, 2005.56, 1}, t);
    CHECK(eval_trend({c2, 2005.56, 2}, t) == doctest::Approx(simple * simple * c2 / (c1 * c1)).epsilon(1e-12));
  }
}
