#include <doctest.h>

#include <boost/math/special_functions/beta.hpp>

#include <cmath>

#include "worldsys/special.hpp"

using namespace worldsys;

namespace {

bool close(double got, double want, double rel) {
  return std::fabs(got - want) <= rel * std::fabs(want) || std::fabs(got - want) < 1e-300;
}

}  // namespace

TEST_CASE("regularized incomplete beta against Boost") {
  for (double a : {0.5, 1.0, 2.5, 3.5, 10.0, 50.0, 5e5}) {
    for (double b : {0.5, 1.0, 3.0, 20.0}) {
      for (double x : {1e-6, 0.01, 0.2, 0.5, 0.8, 0.99, 0.999999}) {
        const double want = boost::math::ibeta(a, b, x);
        const double got = regularized_incomplete_beta(a, b, x);
        INFO("a=" << a << " b=" << b << " x=" << x << " got=" << got << " want=" << want);
        CHECK(close(got, want, 1e-10));
        CHECK(close(regularized_incomplete_beta_complement(a, b, x), boost::math::ibetac(a, b, x), 1e-10));
      }
    }
  }
}

TEST_CASE("incomplete beta edge values and symmetry") {
  CHECK(regularized_incomplete_beta(2, 3, 0) == 0);
  CHECK(regularized_incomplete_beta(2, 3, 1) == 1);
  CHECK(regularized_incomplete_beta(1, 1, 0.3) == doctest::Approx(0.3).epsilon(1e-14));
  for (double x : {0.1, 0.4, 0.7}) {
    CHECK(regularized_incomplete_beta(2.5, 4, x) ==
          doctest::Approx(1 - regularized_incomplete_beta(4, 2.5, 1 - x)).epsilon(1e-13));
  }
}

TEST_CASE("log beta") {
  CHECK(log_beta(1, 1) == doctest::Approx(0).scale(1));
  CHECK(log_beta(2, 3) == doctest::Approx(std::log(1.0 / 12)).epsilon(1e-14));
  CHECK(log_beta(0.5, 0.5) == doctest::Approx(std::log(M_PI)).epsilon(1e-14));
}

TEST_CASE("log beta at large arguments") {
  for (double a : {10.0, 37.5, 1e3, 5e5}) {
    for (double b : {0.5, 3.0, 12.0, 400.0}) {
      const long double ref = lgammal(a) + lgammal(b) - lgammal(static_cast<long double>(a) + b);
      INFO("a=" << a << " b=" << b);
      CHECK(std::fabs(log_beta(a, b) - static_cast<double>(ref)) <= 1e-12 * std::max(1.0, std::fabs(static_cast<double>(ref))));
    }
  }
}
