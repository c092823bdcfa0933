#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tfc/error.hpp"
#include "tfc/gpsolve.hpp"
#include "tfc/layers.hpp"

using namespace tfc;

namespace {
std::shared_ptr<const painleve::ProfileSolution> hm() {
  static auto p = std::make_shared<const painleve::ProfileSolution>(painleve::solve_full_line(2.0, -30.0, 15.0, 4000));
  return p;
}
const trap::Trap kTrap = trap::Trap::harmonic(1.0);
double lambda0() { return trap::compute_lambda0(kTrap); }
trap::TFData tf0() { return trap::boundary_and_beta(kTrap, lambda0(), 64); }
}  // namespace

TEST_CASE("cutoffs have the right plateaus") {
  CHECK(layers::cutoff(0.3, 0.5) == 1.0);
  CHECK(layers::cutoff(-1.0, 0.5) == 0.0);
  CHECK(layers::cutoff(0.75, 0.5) == doctest::Approx(0.5));
  CHECK(layers::glue(-3.0, 1.0) == 1.0);
  CHECK(layers::glue(-0.5, 1.0) == 0.0);
}

TEST_CASE("closed-form energy coefficients for the isotropic trap") {
  const double l0 = lambda0();
  const auto b = layers::predict(tf0(), hm(), 0.05);
  CHECK(std::abs(b.c_m2 - (l0 / 2 - std::numbers::pi * l0 * l0 * l0 / 12)) <= 1e-5);
  CHECK(std::abs(b.c_m2 - 0.265965) <= 1e-5);
  CHECK(std::abs(b.c_log - std::numbers::pi * l0 / 3) <= 1e-5);
  CHECK(std::abs(b.c_log - 0.835543) <= 1e-5);
}

TEST_CASE("f0 at the origin and its one-sided slope at R") {
  const auto b = layers::predict(tf0(), hm(), 0.05);
  CHECK(b.f0(0.0) == doctest::Approx(lambda0() / 4).epsilon(1e-6));
  const double h = 1e-5;
  const double slope = (b.f0(b.R - h) - b.f0(b.R - 2 * h)) / h;
  CHECK(std::abs(slope + b.R / 2) <= 1e-3);
  CHECK(b.f0(b.R + 0.1) == 0.0);
}

TEST_CASE("u_ap pieces") {
  const auto tf = tf0();
  const double eps = 0.02;
  const auto ap = layers::build_u_ap(tf, hm(), eps);
  const double d = ap.delta(), R = tf.R;
  // on the boundary
  CHECK(ap.value(R, 0.0) == doctest::Approx(std::cbrt(eps) * tf.beta.front() * painleve::evaluate(*hm(), 0.0).v).epsilon(1e-10));
  // deep inside
  CHECK(ap.value(R - 10 * d, 0.0) == std::sqrt(tf.a(R - 10 * d, 0.0)));
  // far outside
  CHECK(ap.value(R + 30 * d, 0.0) == 0.0);
  CHECK(layers::residual(ap, R + 30 * d, 0.0) == 0.0);
  // positive on the domain
  for (int k = 0; k < 200; ++k) CHECK(ap.value(R * k / 200.0, 0.0) > 0.0);
}

TEST_CASE("u_ap is continuous across the glue seams") {
  const auto tf = tf0();
  const double eps = 0.02;
  const auto ap = layers::build_u_ap(tf, hm(), eps);
  const double e23 = std::pow(eps, 2.0 / 3.0), b = tf.beta.front();
  for (double x : {-2.0 * ap.L(), -ap.L(), ap.delta() / e23}) {
    const double t = x * e23 / b;
    const double lo = ap.value_fermi(t - 1e-12, 0.0), hi = ap.value_fermi(t + 1e-12, 0.0);
    CHECK(std::abs(lo - hi) <= 1e-9);
  }
}

TEST_CASE("residual scaling is stable across eps") {
  std::vector<double> band, deep, lin;
  for (double eps : {0.05, 0.02, 0.01}) {
    const auto ap = layers::build_u_ap(tf0(), hm(), eps);
    const auto& tf = ap.tf();
    const double e23 = std::pow(eps, 2.0 / 3.0), b = tf.beta.front();
    double mb = 0, md = 0, ml = INFINITY;
    for (int k = 0; k <= 400; ++k) {
      const double t = -ap.delta() / b * k / 400.0;
      const double s = t / e23;
      mb = std::max(mb, std::abs(layers::stretched_residual(ap, tf.R + t, 0.0)) / (eps / std::sqrt(std::abs(s) + 1)));
      const double u = ap.value(tf.R + t, 0.0);
      ml = std::min(ml, (3 * u * u - tf.a(tf.R + t, 0.0)) / e23);
    }
    for (int k = 0; k <= 200; ++k) {
      const double r = (tf.R - ap.delta() / b * 1.05) * k / 200.0;
      md = std::max(md, std::abs(layers::stretched_residual(ap, r, 0.0)) / std::pow(eps, 4.0 / 3.0));
    }
    band.push_back(mb);
    deep.push_back(md);
    lin.push_back(ml);
  }
  const auto ratio = [](const std::vector<double>& v) {
    return *std::max_element(v.begin(), v.end()) / *std::min_element(v.begin(), v.end());
  };
  CHECK(ratio(band) <= 3.0);
  CHECK(ratio(deep) <= 3.0);
  for (double v : lin) CHECK(v > 0.0);
}

TEST_CASE("u_ap approaches the ground state") {
  double prev = INFINITY;
  for (double eps : {0.05, 0.02, 0.01}) {
    const auto gs = gp::solve_radial(kTrap, eps);
    const auto tf = trap::boundary_and_beta(kTrap, gs.lambda, 64);
    const auto ap = layers::build_u_ap(tf, hm(), eps, 0.0, 0.0, true);
    double sup = 0;
    for (int k = 0; k < 2000; ++k) {
      const double r = tf.R * 1.3 * k / 2000;
      sup = std::max(sup, std::abs(ap.value(r, 0.0) - gp::eval_radial(gs, r).v));
    }
    CHECK(sup < prev);
    prev = sup;
  }
}

TEST_CASE("parameter and domain errors") {
  CHECK_THROWS_AS(layers::build_u_ap(tf0(), hm(), 0.05, 0.01, 4.0), ParameterError);
  const auto ap = layers::build_u_ap(tf0(), hm(), 0.05);
  CHECK_THROWS_AS(layers::residual(ap, ap.box_half(), 0.0), DomainError);
  auto half = std::make_shared<const painleve::ProfileSolution>(painleve::solve_half_line_neumann(2.0, 30.0, 4000));
  CHECK_THROWS_AS(layers::build_u_ap(tf0(), half, 0.05), DomainError);
}

TEST_CASE("normal sections on an ellipse") {
  const auto t = trap::Trap::harmonic(0.8);
  const auto tf = trap::boundary_and_beta(t, trap::compute_lambda0(t), 256);
  const auto ap = layers::build_u_ap(tf, hm(), 0.02);
  const auto rows = layers::normal_section(ap, 0.3, {-0.05, 0.0, 0.05});
  CHECK(rows[1].u_ap == doctest::Approx(rows[1].inner).epsilon(1e-8));
  CHECK(rows[0].u_ap > rows[1].u_ap);
  CHECK(rows[2].u_ap < rows[1].u_ap);
}
