#pragma once

namespace worldsys {

/// ln B(a, b) via lgamma.
double log_beta(double a, double b);

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and 0 <= x <= 1.
/// Continued fraction (modified Lentz) with relative tolerance 1e-15; the
/// symmetry I_x(a,b) = 1 - I_{1-x}(b,a) keeps the fraction in its fast
/// convergence region. Throws NumericalError if it fails to converge.
double regularized_incomplete_beta(double a, double b, double x);

/// Like regularized_incomplete_beta but returns the complement
/// 1 - I_x(a, b) without cancellation.
double regularized_incomplete_beta_complement(double a, double b, double x);

}  // namespace worldsys
