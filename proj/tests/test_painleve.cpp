#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tfc/error.hpp"
#include "tfc/painleve.hpp"
#include "tfc/specfun.hpp"

using namespace tfc;
using namespace tfc::painleve;

namespace {
const ProfileSolution& hm() {
  static const ProfileSolution s = solve_full_line(2.0, -30.0, 15.0, 4000);
  return s;
}
}  // namespace

TEST_CASE("V(0) agrees with an independent shooting computation") {
  CHECK(std::abs(evaluate(hm(), 0.0).v - oracle::hastings_mcleod_v0(-6.0)) <= 1e-7);
}

TEST_CASE("integral identity and left tail") {
  CHECK(std::abs(hm_identity_defect(hm())) <= 1e-6);
  const double c = (evaluate(hm(), -20.0).v - std::sqrt(20.0)) * std::pow(20.0, 2.5);
  CHECK(c == doctest::Approx(-0.125).epsilon(0.05));
  CHECK(std::abs(evaluate(hm(), -20.0).vx + 0.5 / std::sqrt(20.0)) <= 1e-4);
}

TEST_CASE("profile is positive and decreasing") {
  const auto& s = hm();
  for (std::size_t i = 0; i < s.v.size(); ++i) {
    CHECK(s.v[i] > 0.0);
    CHECK(s.vx[i] < 0.0);
  }
}

TEST_CASE("lies below sqrt(-x) once the left tail sets in") {
  // near the origin the profile sits above sqrt(-x); the tail correction is negative
  for (double x = -29.0; x <= -3.0; x += 0.5) CHECK(evaluate(hm(), x).v <= std::sqrt(-x));
}

TEST_CASE("connection ratio is sqrt(2), not 1") {
  const auto c = connection_ratio(hm());
  CHECK(c.converged);
  CHECK(c.ratio == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  const double r4 = evaluate(hm(), 4.0).v / specfun::airy(4.0).ai;
  const double r6 = evaluate(hm(), 6.0).v / specfun::airy(6.0).ai;
  CHECK(r4 == doctest::Approx(r6).epsilon(1e-3));
}

TEST_CASE("linearized potential and spectrum are positive and grid stable") {
  const auto a = linearization(hm());
  const auto b = linearization(solve_full_line(2.0, -30.0, 15.0, 8000));
  CHECK(a.potential_min > 0.0);
  CHECK(a.mu1 > 0.0);
  CHECK(std::abs(a.potential_min - b.potential_min) <= 1e-4);
  CHECK(std::abs(a.mu1 - b.mu1) <= 1e-4);
  CHECK(a.tails_increasing);
  CHECK(a.mu1_wide == doctest::Approx(a.mu1).epsilon(1e-4));
}

TEST_CASE("grid refinement") {
  const auto fine = solve_full_line(2.0, -30.0, 15.0, 8000);
  CHECK(std::abs(evaluate(fine, 0.0).v - evaluate(hm(), 0.0).v) <= 1e-9);
}

TEST_CASE("ODE residual at random points, p in {2, 3, 4}") {
  std::mt19937_64 rng(11);
  for (double p : {2.0, 3.0, 4.0}) {
    const auto s = solve_full_line(p, -30.0, 15.0, 4000);
    std::uniform_real_distribution<double> u(-25.0, 10.0);
    const double h = 1e-3;
    for (int k = 0; k < 100; ++k) {
      const double x = u(rng);
      const double vm = evaluate(s, x - h).v, v = evaluate(s, x).v, vp = evaluate(s, x + h).v;
      const double d2 = (vp - 2 * v + vm) / (h * h);
      CHECK(d2 == doctest::Approx(v * (std::pow(std::abs(v), p) + x)).epsilon(1e-4).scale(1e-6));
    }
  }
}

TEST_CASE("left tail follows the general-p algebraic expansion") {
  for (double p : {3.0, 4.0}) {
    const auto s = solve_full_line(p, -30.0, 15.0, 4000);
    const double X = 20.0;
    const auto t = algebraic_tail(p, X);
    CHECK(evaluate(s, -X).v == doctest::Approx(t.value).epsilon(1e-6));
  }
}

TEST_CASE("half-line problems") {
  const auto d = solve_half_line_dirichlet(2.0, 30.0, 4000);
  CHECK(std::abs(d.v.front()) <= 1e-12);
  CHECK((evaluate(d, 15.0).v - std::sqrt(15.0)) * std::pow(15.0, 2.5) == doctest::Approx(-0.125).epsilon(0.05));
  const auto n0 = solve_half_line_neumann(2.0, 30.0, 4000);
  SolveOptions o;
  o.guess_scale = 0.1;
  const auto n1 = solve_half_line_neumann(2.0, 30.0, 4000, o);
  double diff = 0;
  for (std::size_t i = 0; i < n0.v.size(); ++i) diff = std::max(diff, std::abs(n0.v[i] - n1.v[i]));
  CHECK(diff <= 1e-8);
  CHECK(std::abs(n0.vx.front()) <= 1e-10);
}

TEST_CASE("integral of v^2 on the right half-line") {
  // trapezoid on a fine grid plus the Airy tail as a cross-check
  const auto& s = hm();
  double sum = 0;
  const int m = 200000;
  const double b = 15.0, h = b / m;
  for (int i = 0; i <= m; ++i) {
    const double v = evaluate(s, i * h).v;
    sum += (i == 0 || i == m ? 0.5 : 1.0) * v * v * h;
  }
  CHECK(integral_v2_positive(s) == doctest::Approx(sum).epsilon(1e-8));
}

TEST_CASE("invalid arguments") {
  CHECK_THROWS_AS(solve_full_line(1.0, -30, 15, 4000), DomainError);
  CHECK_THROWS_AS(solve_full_line(2.0, 5, 15, 4000), DomainError);
}
