#include <doctest.h>

#include <cmath>
#include <random>

#include "tfc/numerics.hpp"

using namespace tfc;

TEST_CASE("fd weights reproduce the three-point second difference") {
  const auto w = num::fd_weights(0.0, {-0.1, 0.0, 0.1}, 2);
  CHECK(w[2][0] == doctest::Approx(100.0));
  CHECK(w[2][1] == doctest::Approx(-200.0));
  CHECK(w[2][2] == doctest::Approx(100.0));
  CHECK(w[1][0] == doctest::Approx(-5.0));
}

TEST_CASE("fd weights differentiate polynomials on uneven nodes") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> xs;
    for (int k = 0; k < 5; ++k) xs.push_back(k * 0.2 + 0.05 * u(rng));
    const double x0 = 0.4 + 0.1 * u(rng);
    const auto w = num::fd_weights(x0, xs, 2);
    double d1 = 0, d2 = 0;
    for (int k = 0; k < 5; ++k) {
      d1 += w[1][k] * std::pow(xs[k], 4);
      d2 += w[2][k] * std::pow(xs[k], 4);
    }
    CHECK(d1 == doctest::Approx(4 * std::pow(x0, 3)).epsilon(1e-9));
    CHECK(d2 == doctest::Approx(12 * x0 * x0).epsilon(1e-8));
  }
}

TEST_CASE("simpson is exact for cubics") {
  const std::size_t n = 21;
  const double h = 0.1;
  const auto w = num::simpson_weights(n, h);
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * std::pow(i * h, 3);
  CHECK(s == doctest::Approx(std::pow(2.0, 4) / 4).epsilon(1e-14));
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = std::pow(i * h, 2);
  const auto c = num::cumulative_simpson_backward(f, h);
  CHECK(c.back() == doctest::Approx(0.0));
  CHECK(c.front() == doctest::Approx(8.0 / 3).epsilon(1e-14));
  CHECK(c[4] == doctest::Approx((8.0 - std::pow(0.4, 3)) / 3).epsilon(1e-14));
}

TEST_CASE("quintic hermite reproduces quintics") {
  const auto p = [](double x) { return 1 - 2 * x + 3 * x * x - x * x * x + 0.5 * std::pow(x, 4) - 0.25 * std::pow(x, 5); };
  const auto dp = [](double x) { return -2 + 6 * x - 3 * x * x + 2 * std::pow(x, 3) - 1.25 * std::pow(x, 4); };
  const auto d2p = [](double x) { return 6 - 6 * x + 6 * x * x - 5 * std::pow(x, 3); };
  const double a = 0.3, b = 1.1;
  for (double x : {0.3, 0.5, 0.77, 1.1}) {
    const auto v = num::quintic_hermite(a, b, p(a), dp(a), d2p(a), p(b), dp(b), d2p(b), x);
    CHECK(v.f == doctest::Approx(p(x)).epsilon(1e-13));
    CHECK(v.df == doctest::Approx(dp(x)).epsilon(1e-12));
    CHECK(v.d2f == doctest::Approx(d2p(x)).epsilon(1e-11));
  }
}

TEST_CASE("locate clamps") {
  const std::vector<double> x{0, 1, 2, 3};
  CHECK(num::locate(x, -5) == 0);
  CHECK(num::locate(x, 1.5) == 1);
  CHECK(num::locate(x, 3.0) == 2);
  CHECK(num::locate(x, 9.0) == 2);
}

TEST_CASE("quadrature") {
  CHECK(num::gauss_legendre([](double x) { return std::exp(x); }, 0, 1) == doctest::Approx(std::exp(1.0) - 1).epsilon(1e-15));
  CHECK(num::integrate([](double x) { return 1 / (1 + x * x); }, 0, 1) == doctest::Approx(std::atan(1.0)).epsilon(1e-14));
}

TEST_CASE("smoothstep") {
  CHECK(num::smoothstep5(-1).v == 0.0);
  CHECK(num::smoothstep5(2).v == 1.0);
  CHECK(num::smoothstep5(0.5).v == doctest::Approx(0.5));
  for (double u : {0.1, 0.35, 0.8}) CHECK(num::smoothstep5(u).v + num::smoothstep5(1 - u).v == doctest::Approx(1.0));
  CHECK(num::smoothstep5(0).d1 == 0.0);
  CHECK(num::smoothstep5(1).d2 == doctest::Approx(0.0));
}

TEST_CASE("fit_line recovers an exact line") {
  const auto f = num::fit_line({1, 2, 3, 4}, {3, 5, 7, 9});
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r_squared == doctest::Approx(1.0));
}
