#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tfc/cli.hpp"
#include "tfc/io.hpp"
#include "tfc/error.hpp"

using namespace tfc;
namespace fs = std::filesystem;

namespace {
int run(std::vector<std::string> args) {
  args.insert(args.begin(), "tf-corner");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}
std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}
fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("tfc_cli_test_" + name);
  fs::remove_all(p);
  return p;
}
}  // namespace

TEST_CASE("painleve writes hm.csv") {
  const auto out = scratch("painleve");
  CHECK(run({"painleve", "--p", "2", "--xmin", "-30", "--xmax", "15", "--n", "4000", "--out", out.string()}) == 0);
  CHECK(slurp(out / "hm.csv").rfind("x,v,vx\n", 0) == 0);
}

TEST_CASE("unknown trap kind is a configuration error") {
  CHECK(run({"ground", "--trap", "nosuch"}) == 2);
  CHECK(run({"frobnicate"}) == 2);
  CHECK(run({"ground", "--eps", "0.01,0.05"}) == 2);
  CHECK(run({"ground", "--eps", "-0.1"}) == 2);
  CHECK(run({"ground", "--bogus", "1"}) == 2);
}

TEST_CASE("solver-side domain failures map to exit codes") {
  const auto out = scratch("bad");
  CHECK(run({"ground", "--eps", "0.0001", "--out", out.string()}) == 2);
}

TEST_CASE("config file keys, flag precedence, unknown keys") {
  const auto out = scratch("config");
  fs::create_directories(out);
  const auto cfg = out / "run.cfg";
  std::ofstream(cfg) << "# test\ntrap = harmonic\naniso = 0.8\nn = 128\n";
  CHECK(run({"trap", "--config", cfg.string(), "--aniso", "1.0", "--out", out.string()}) == 0);
  CHECK(slurp(out / "tf.csv").find("theta,x,y,beta,curvature") == 0);
  // aniso = 1 from the flag wins over 0.8: beta is constant around the circle; n = 128 from the file
  const auto t = io::read_csv(out / "tf.csv");
  CHECK(t.rows.size() == 128);
  const auto beta = t.column(3);
  for (double b : beta) CHECK(b == doctest::Approx(beta.front()).epsilon(1e-12));
  std::ofstream(cfg) << "mystery = 3\n";
  CHECK(run({"trap", "--config", cfg.string(), "--out", out.string()}) == 2);
  std::ofstream(cfg) << "no equals sign\n";
  CHECK(run({"trap", "--config", cfg.string(), "--out", out.string()}) == 2);
}

TEST_CASE("resolve and hash") {
  std::map<std::string, std::string> raw{{"eps", "0.05,0.02"}, {"trap", "gaussian"}};
  const auto a = cli::resolve("ground", raw);
  CHECK(a.eps.size() == 2);
  CHECK(a.trap_kind == "gaussian");
  raw["out"] = "elsewhere";
  raw["jobs"] = "3";
  CHECK(cli::resolve("ground", raw).hash() == a.hash());
  raw["eps"] = "0.05";
  CHECK(cli::resolve("ground", raw).hash() != a.hash());
  CHECK(a.hash().size() == 16);
  CHECK_THROWS_AS(cli::resolve("ground", {{"trap", "nosuch"}}), ConfigError);
  CHECK_THROWS_AS(cli::parse_config_text("a=1\nbroken\n"), ConfigError);
}

TEST_CASE("plot") {
  const auto out = scratch("plot");
  fs::create_directories(out);
  std::ofstream(out / "rate.csv") << "eps,err\n0.1,0.01\n0.05,0.0025\n0.01,0.0001\n";
  CHECK(run({"plot", "--csv", (out / "rate.csv").string(), "--out", out.string()}) == 0);
  CHECK(slurp(out / "rate.svg").find("<svg") != std::string::npos);
  std::ofstream(out / "empty.csv") << "";
  CHECK(run({"plot", "--csv", (out / "empty.csv").string(), "--out", out.string()}) == 2);
  CHECK(run({"plot", "--out", out.string()}) == 2);
}

TEST_CASE("verify writes report.json with the multiplier anchor") {
  const auto out = scratch("verify");
  CHECK(run({"verify", "--trap", "harmonic", "--aniso", "1.0", "--eps", "0.05,0.02,0.01", "--out", out.string()}) == 0);
  const auto j = slurp(out / "report.json");
  CHECK(j.find("λ_ε − λ₀ = O(|ln ε|ε²)") != std::string::npos);
}

TEST_CASE("sweep directories are named by config hash") {
  const auto out = scratch("sweep");
  CHECK(run({"sweep", "--eps", "0.05,0.03,0.02", "--jobs", "3", "--out", out.string()}) == 0);
  std::size_t dirs = 0;
  for (const auto& e : fs::directory_iterator(out)) {
    if (!e.is_directory()) continue;
    ++dirs;
    CHECK(e.path().filename().string().size() == 16);
    CHECK(fs::exists(e.path() / "ground.csv"));
  }
  CHECK(dirs == 3);
  CHECK(fs::exists(out / "report.json"));
}
