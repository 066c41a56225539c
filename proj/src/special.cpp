#include "worldsys/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "worldsys/error.hpp"

namespace worldsys {

namespace {

constexpr int kMaxIterations = 10000;
constexpr double kEpsilon = 1e-15;
constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a,b) * B(a,b) / (x^a (1-x)^b / a).
double beta_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEpsilon) return h;
  }
  throw NumericalError("incomplete beta continued fraction did not converge");
}

// x^a (1-x)^b / (a B(a,b)), evaluated in log space.
double front_factor(double a, double b, double x) {
  return std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b)) / a;
}

void check_arguments(double a, double b, double x) {
  if (!(a > 0) || !(b > 0) || !(x >= 0) || !(x <= 1)) {
    throw DomainError("incomplete beta requires a, b > 0 and 0 <= x <= 1");
  }
}

}  // namespace

namespace {

// Remainder of Stirling's series, ln Gamma(z) - [(z - 1/2) ln z - z + ln(2 pi)/2].
double stirling_remainder(double z) {
  const double r = 1.0 / (z * z);
  return (1.0 / 12 - r * (1.0 / 360 - r * (1.0 / 1260 - r / 1680))) / z;
}

}  // namespace

double log_beta(double a, double b) {
  const double big = std::max(a, b);
  const double small = std::min(a, b);
  if (big < 10) return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  // ln Gamma(big) - ln Gamma(big + small) without the cancellation of two
  // large lgamma values.
  const double sum = big + small;
  const double diff = (big - 0.5) * std::log1p(-small / sum) - small * std::log(sum) + small +
                      stirling_remainder(big) - stirling_remainder(sum);
  return std::lgamma(small) + diff;
}

double regularized_incomplete_beta(double a, double b, double x) {
  check_arguments(a, b, x);
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  if (x < (a + 1.0) / (a + b + 2.0)) return front_factor(a, b, x) * beta_fraction(a, b, x);
  return 1.0 - front_factor(b, a, 1.0 - x) * beta_fraction(b, a, 1.0 - x);
}

double regularized_incomplete_beta_complement(double a, double b, double x) {
  check_arguments(a, b, x);
  if (x == 0.0) return 1.0;
  if (x == 1.0) return 0.0;
  if (x < (a + 1.0) / (a + b + 2.0)) return 1.0 - front_factor(a, b, x) * beta_fraction(a, b, x);
  return front_factor(b, a, 1.0 - x) * beta_fraction(b, a, 1.0 - x);
}

}  // namespace worldsys
