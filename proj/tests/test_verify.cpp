#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "tfc/error.hpp"
#include "tfc/io.hpp"
#include "tfc/verify.hpp"

using namespace tfc;

namespace {
const verify::HarnessResult& ladder() {
  static const auto r = verify::run(trap::Trap::harmonic(1.0), {0.05, 0.03, 0.02, 0.01}, 4001, 4);
  return r;
}
const verify::Check& check(const std::string& name) {
  for (const auto& c : ladder().report.checks)
    if (c.name == name) return c;
  throw std::runtime_error("no check " + name);
}
}  // namespace

TEST_CASE("rate_fit on an exact power law") {
  const std::vector<double> eps{0.1, 0.05, 0.02, 0.01};
  std::vector<double> err;
  for (double e : eps) err.push_back(3.0 * e * e);
  const auto f = verify::rate_fit(eps, err);
  CHECK(f.exponent == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.prefactor == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.r_squared == doctest::Approx(1.0));
  std::vector<double> logged;
  for (double e : eps) logged.push_back(e * e * std::abs(std::log(e)));
  CHECK(verify::rate_fit(eps, logged, 1.0).exponent == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("rate_fit is invariant under rescaling the errors") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  const std::vector<double> eps{0.08, 0.04, 0.02, 0.01, 0.005};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> err, scaled;
    const double k = u(rng) * 10;
    for (double e : eps) {
      err.push_back(u(rng) * std::pow(e, 1.5));
      scaled.push_back(k * err.back());
    }
    const auto a = verify::rate_fit(eps, err), b = verify::rate_fit(eps, scaled);
    CHECK(a.exponent == doctest::Approx(b.exponent).epsilon(1e-10));
    CHECK(b.prefactor == doctest::Approx(k * a.prefactor).epsilon(1e-10));
  }
}

TEST_CASE("rate_fit rejects bad samples") {
  CHECK_THROWS_AS(verify::rate_fit({0.1, 0.05}, {1, 2}), DomainError);
  CHECK_THROWS_AS(verify::rate_fit({0.1, 0.05, 0.01}, {1, 0, 2}), DomainError);
  CHECK_THROWS_AS(verify::rate_fit({0.05, 0.1, 0.01}, {1, 1, 2}), DomainError);
}

TEST_CASE("the harmonic ladder passes the rate and bound checks") {
  CHECK(check("lambda_gap_rate").pass);
  CHECK(check("lambda_gap_rate").anchor == "λ_ε − λ₀ = O(|ln ε|ε²)");
  CHECK(check("energy_log_slope").pass);
  CHECK(check("corner_inner_band").pass);
  CHECK(check("interior_eps2").pass);
  CHECK(check("holder_half").pass);
  CHECK(check("holder_06_increasing").pass);
  CHECK(check("gradient_bound").pass);
  CHECK(check("monotonicity_sign").pass);
  CHECK(check("monotonicity_constant").pass);
  CHECK(check("linearization_band").pass);
  CHECK(check("linearization_complement").pass);
  CHECK(check("linearization_vs_profile").pass);
  CHECK(check("f_sup_rate").pass);
  CHECK(check("f_boundary_value").pass);
  CHECK(check("xi_origin").pass);
  CHECK(check("mass_constraint").pass);
  CHECK(check("energy_split").pass);
  for (const auto& c : ladder().report.checks) CHECK_FALSE(c.anchor.empty());
}

TEST_CASE("measurements: sanity") {
  for (const auto& m : ladder().rows) {
    CHECK(std::abs(m.eta_r_origin) <= 1e-8);
    CHECK(m.mono_max < 0.0);
    CHECK(m.decay_rate > 0.0);
    CHECK(m.gamma == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  }
}

TEST_CASE("report regenerated from persisted CSV is identical") {
  const auto& r = ladder();
  const auto csv = io::to_csv(io::measurement_table(r.rows));
  const auto rows = io::measurements_from(io::parse_csv(csv));
  const auto again = verify::assemble(rows, r.report.trap, r.report.n);
  CHECK(io::report_json(again) == io::report_json(r.report));
  REQUIRE(again.checks.size() == r.report.checks.size());
  for (std::size_t i = 0; i < again.checks.size(); ++i) {
    CHECK(std::memcmp(&again.checks[i].value, &r.report.checks[i].value, sizeof(double)) == 0);
  }
}

TEST_CASE("single-thread and multi-thread runs agree bit for bit") {
  const auto one = verify::run(trap::Trap::harmonic(1.0), {0.05, 0.03, 0.02}, 4001, 1);
  const auto three = verify::run(trap::Trap::harmonic(1.0), {0.05, 0.03, 0.02}, 4001, 3);
  CHECK(io::to_csv(io::measurement_table(one.rows)) == io::to_csv(io::measurement_table(three.rows)));
}

TEST_CASE("assemble rejects unordered ladders") {
  std::vector<verify::Measurement> rows(2);
  rows[0].eps = 0.01;
  rows[1].eps = 0.05;
  CHECK_THROWS_AS(verify::assemble(rows, "x", 4001), ConfigError);
}
