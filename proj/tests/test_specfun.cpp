#include <doctest.h>

#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "tfc/error.hpp"
#include "tfc/specfun.hpp"

using namespace tfc;

TEST_CASE("airy matches boost on both branches") {
  for (double x : {-20.0, -9.5, -8.0, -3.3, -0.5, 0.0, 0.7, 2.5, 7.99, 8.01, 15.0, 30.0}) {
    const auto a = specfun::airy(x);
    const double tol = 1e-12 + 1e-11 * std::abs(x);
    CHECK(a.ai == doctest::Approx(boost::math::airy_ai(x)).epsilon(tol).scale(1e-300));
    CHECK(a.ai_prime == doctest::Approx(boost::math::airy_ai_prime(x)).epsilon(tol).scale(1e-300));
    CHECK(a.bi == doctest::Approx(boost::math::airy_bi(x)).epsilon(tol));
    CHECK(a.bi_prime == doctest::Approx(boost::math::airy_bi_prime(x)).epsilon(tol));
  }
}

TEST_CASE("wronskian Ai Bi' - Ai' Bi = 1/pi at random points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-25.0, 6.0);
  for (int i = 0; i < 300; ++i) {
    const double x = u(rng);
    const auto a = specfun::airy(x);
    CHECK(a.ai * a.bi_prime - a.ai_prime * a.bi == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-9));
  }
}

TEST_CASE("values at zero") {
  const auto a = specfun::airy(0.0);
  CHECK(a.ai == doctest::Approx(1.0 / (std::pow(3.0, 2.0 / 3.0) * std::tgamma(2.0 / 3.0))).epsilon(1e-15));
  CHECK(a.ai_prime == doctest::Approx(-1.0 / (std::cbrt(3.0) * std::tgamma(1.0 / 3.0))).epsilon(1e-15));
}

TEST_CASE("log derivative and scaled forms") {
  for (double x : {0.5, 3.0, 8.0, 12.0}) {
    const auto a = specfun::airy(x);
    CHECK(specfun::airy_ai_log_derivative(x) == doctest::Approx(a.ai_prime / a.ai).epsilon(1e-12));
    CHECK(specfun::airy_ai_log(x) == doctest::Approx(std::log(a.ai)).epsilon(1e-12));
    CHECK(specfun::airy_ai_scaled(x) == doctest::Approx(a.ai * std::exp(2.0 / 3.0 * std::pow(x, 1.5))).epsilon(1e-12));
  }
  // far beyond underflow: -Ai'/Ai ~ sqrt(x) + 1/(4x) - 5/(32 x^{5/2})
  const double x = 150.0;
  CHECK(-specfun::airy_ai_log_derivative(x) == doctest::Approx(std::sqrt(x) + 0.25 / x - 5.0 / 32.0 * std::pow(x, -2.5)).epsilon(1e-9));
  CHECK(specfun::airy(x).ai_underflow);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(specfun::airy(NAN), DomainError);
  CHECK_THROWS_AS(specfun::airy(250.0), DomainError);
}
