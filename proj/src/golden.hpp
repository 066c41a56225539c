#pragma once

#include <cmath>

namespace worldsys::detail {

struct Minimum {
  double x;
  double value;
};

/// Golden-section search for a minimum of `f` on [lo, hi], stopping when the
/// bracket is narrower than `tol`. Assumes unimodality on the bracket.
template <class F>
Minimum golden_section(F&& f, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  // Bracket endpoints are candidates too when the minimum sits on the boundary.
  Minimum best = fc <= fd ? Minimum{c, fc} : Minimum{d, fd};
  for (double x : {lo, hi}) {
    const double fx = f(x);
    if (fx < best.value) best = {x, fx};
  }
  return best;
}

}  // namespace worldsys::detail
