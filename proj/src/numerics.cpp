#include "tfc/numerics.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "tfc/error.hpp"

namespace tfc::num {

std::vector<std::vector<double>> fd_weights(double x0, const std::vector<double>& xs, int m) {
  const int n = static_cast<int>(xs.size());
  std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = xs[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = xs[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        }
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      }
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

std::vector<double> simpson_weights(std::size_t n, double h) {
  if (n < 3 || n % 2 == 0) throw DomainError("simpson_weights: need an odd node count >= 3");
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = (i == 0 || i + 1 == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    w[i] *= h / 3.0;
  }
  return w;
}

std::vector<double> cumulative_simpson_backward(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  if (n < 3 || n % 2 == 0) {
    throw DomainError("cumulative_simpson_backward: need an odd node count >= 3");
  }
  std::vector<double> c(n, 0.0);
  for (std::size_t k = 2; k < n; k += 2) {
    const std::size_t i = n - 1 - k;
    c[i] = c[i + 2] + h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
  }
  // odd offsets: one-interval quadratic rule
  c[n - 2] = h / 12.0 * (-f[n - 3] + 8.0 * f[n - 2] + 5.0 * f[n - 1]);
  for (std::size_t k = 3; k < n; k += 2) {
    const std::size_t i = n - 1 - k;
    c[i] = c[i + 1] + h / 12.0 * (5.0 * f[i] + 8.0 * f[i + 1] - f[i + 2]);
  }
  return c;
}

HermiteValue quintic_hermite(double x0, double x1, double f0, double d0, double s0, double f1,
                             double d1, double s1, double x) {
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  const double h0 = 1 - 10 * t3 + 15 * t4 - 6 * t5;
  const double h1 = t - 6 * t3 + 8 * t4 - 3 * t5;
  const double h2 = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
  const double h3 = 0.5 * t3 - t4 + 0.5 * t5;
  const double h4 = -4 * t3 + 7 * t4 - 3 * t5;
  const double h5 = 10 * t3 - 15 * t4 + 6 * t5;
  const double g0 = -30 * t2 + 60 * t3 - 30 * t4;
  const double g1 = 1 - 18 * t2 + 32 * t3 - 15 * t4;
  const double g2 = t - 4.5 * t2 + 6 * t3 - 2.5 * t4;
  const double g3 = 1.5 * t2 - 4 * t3 + 2.5 * t4;
  const double g4 = -12 * t2 + 28 * t3 - 15 * t4;
  const double g5 = 30 * t2 - 60 * t3 + 30 * t4;
  const double k0 = -60 * t + 180 * t2 - 120 * t3;
  const double k1 = -36 * t + 96 * t2 - 60 * t3;
  const double k2 = 1 - 9 * t + 18 * t2 - 10 * t3;
  const double k3 = 3 * t - 12 * t2 + 10 * t3;
  const double k4 = -24 * t + 84 * t2 - 60 * t3;
  const double k5 = 60 * t - 180 * t2 + 120 * t3;
  HermiteValue out;
  out.f = h0 * f0 + h * h1 * d0 + h * h * h2 * s0 + h5 * f1 + h * h4 * d1 + h * h * h3 * s1;
  out.df = (g0 * f0 + g5 * f1) / h + g1 * d0 + g4 * d1 + h * (g2 * s0 + g3 * s1);
  out.d2f = (k0 * f0 + k5 * f1) / (h * h) + (k1 * d0 + k4 * d1) / h + k2 * s0 + k3 * s1;
  return out;
}

std::size_t locate(const std::vector<double>& x, double at) {
  const auto it = std::upper_bound(x.begin(), x.end(), at);
  std::size_t i = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
  return std::min(i, x.size() - 2);
}

double cubic_hermite(const std::vector<double>& x, const std::vector<double>& f,
                     const std::vector<double>& df, double at) {
  at = std::clamp(at, x.front(), x.back());
  const std::size_t i = locate(x, at);
  const double h = x[i + 1] - x[i];
  const double t = (at - x[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * f[i] + (t3 - 2 * t2 + t) * h * df[i] +
         (-2 * t3 + 3 * t2) * f[i + 1] + (t3 - t2) * h * df[i + 1];
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 20>::integrate(f, a, b);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, tol);
}

Smooth smoothstep5(double u) {
  if (u <= 0.0) return {0.0, 0.0, 0.0};
  if (u >= 1.0) return {1.0, 0.0, 0.0};
  const double u2 = u * u;
  return {u2 * u * (10 - 15 * u + 6 * u2), 30 * u2 * (1 - u) * (1 - u),
          60 * u * (1 - u) * (1 - 2 * u)};
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw DomainError("fit_line: need two or more paired samples");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
  return fit;
}

}  // namespace tfc::num
