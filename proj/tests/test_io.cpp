#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>

#include "tfc/error.hpp"
#include "tfc/io.hpp"
#include "tfc/svg.hpp"

using namespace tfc;

TEST_CASE("csv round trip is bit exact") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> ex(-300, 300);
  io::Table t{{"a", "b", "c"}, {}};
  for (int i = 0; i < 500; ++i) {
    t.rows.push_back({std::ldexp(mant(rng), ex(rng)), mant(rng), std::numeric_limits<double>::denorm_min() * (i + 1)});
  }
  t.rows.push_back({0.1, -0.0, 1e308});
  const auto back = io::parse_csv(io::to_csv(t));
  REQUIRE(back.rows.size() == t.rows.size());
  CHECK(back.header == t.header);
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::memcmp(&back.rows[i][j], &t.rows[i][j], sizeof(double)) == 0);
}

TEST_CASE("non-finite values survive") {
  io::Table t{{"x"}, {{NAN}, {INFINITY}, {-INFINITY}}};
  const auto back = io::parse_csv(io::to_csv(t));
  CHECK(std::isnan(back.rows[0][0]));
  CHECK(back.rows[1][0] == INFINITY);
  CHECK(back.rows[2][0] == -INFINITY);
}

TEST_CASE("malformed csv") {
  CHECK_THROWS_AS(io::parse_csv(""), ConfigError);
  CHECK_THROWS_AS(io::parse_csv("x,y\n"), ConfigError);
  CHECK_THROWS_AS(io::parse_csv("x,y\n1,2\n3\n"), ConfigError);
  CHECK_THROWS_AS(io::parse_csv("x,y\n1,abc\n"), ConfigError);
  CHECK_THROWS_AS(io::parse_csv("x,y\n1,2z\n"), ConfigError);
}

TEST_CASE("profile table header") {
  painleve::ProfileSolution s;
  s.x = {0, 1};
  s.v = {1, 0.5};
  s.vx = {-0.5, -0.5};
  s.vxx = {0, 0};
  CHECK(io::to_csv(io::profile_table(s)).rfind("x,v,vx\n", 0) == 0);
}

TEST_CASE("svg: one polyline per column, log-log fit for two columns") {
  io::Table three{{"x", "v", "vx"}, {{0, 1, -1}, {1, 0.5, -0.4}, {2, 0.2, -0.1}}};
  const auto s = svg::render(svg::plot_from_table(three, "hm.csv"));
  std::size_t count = 0;
  for (std::size_t p = 0; (p = s.find("<polyline", p)) != std::string::npos; ++p) ++count;
  CHECK(count == 2);
  CHECK(s.find("source: hm.csv") != std::string::npos);

  io::Table rate{{"eps", "err"}, {{0.1, 0.02}, {0.05, 0.005}, {0.01, 0.0002}}};
  const auto p = svg::plot_from_table(rate, "rate.csv");
  CHECK(p.log_x);
  REQUIRE(p.power_fit);
  CHECK(p.power_fit->second == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(svg::render(p).find("fit: err") != std::string::npos);
}

TEST_CASE("report json keeps check order and anchors") {
  verify::VerificationReport rep;
  rep.trap = "t";
  rep.n = 5;
  rep.eps = {0.1};
  rep.checks.push_back({"b", "anchor b", 1.0, 2.0, "<=", true, ""});
  rep.checks.push_back({"a", "anchor a", NAN, 2.0, "<=", false, "note"});
  const auto j = io::report_json(rep);
  CHECK(j.find("\"b\"") < j.find("\"a\""));
  CHECK(j.find("\"nan\"") != std::string::npos);
  CHECK(j.find("anchor a") != std::string::npos);
}
