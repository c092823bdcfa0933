#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace tfc::num {

/// Finite-difference weights (Fornberg) for derivatives 0..m at x0 from nodes xs.
/// Result is indexed [derivative][node].
std::vector<std::vector<double>> fd_weights(double x0, const std::vector<double>& xs, int m);

/// Composite Simpson weights on n uniformly spaced nodes with spacing h (n odd).
std::vector<double> simpson_weights(std::size_t n, double h);

/// Backward cumulative integral c[i] = int_{s_i}^{s_end} f ds on a uniform grid,
/// consistent with composite Simpson at even offsets from the end (n odd).
std::vector<double> cumulative_simpson_backward(const std::vector<double>& f, double h);

/// Quintic Hermite interpolation on [x0, x1] from value, slope and curvature at both ends.
struct HermiteValue {
  double f;
  double df;
  double d2f;
};
HermiteValue quintic_hermite(double x0, double x1, double f0, double d0, double s0, double f1,
                             double d1, double s1, double x);

/// Cubic Hermite on a sorted grid with slopes; clamps outside.
double cubic_hermite(const std::vector<double>& x, const std::vector<double>& f,
                     const std::vector<double>& df, double at);

/// Index i with x[i] <= at < x[i+1], clamped to [0, n-2].
std::size_t locate(const std::vector<double>& x, double at);

/// Gauss-Legendre integral of f over [a, b] (20 points).
double gauss_legendre(const std::function<double(double)>& f, double a, double b);

/// Adaptive Gauss-Kronrod integral on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13);

/// C^2 quintic smoothstep: 0 for u <= 0, 1 for u >= 1, with derivatives.
struct Smooth {
  double v;
  double d1;
  double d2;
};
Smooth smoothstep5(double u);

/// Ordinary least squares y = a + b x.
struct LineFit {
  double intercept;
  double slope;
  double r_squared;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace tfc::num
