// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tfc/cli.hpp"
#include "tfc/gpsolve.hpp"
#include "tfc/painleve.hpp"
#include "tfc/trap.hpp"
#include "tfc/verify.hpp"

using namespace tfc;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& what) {
  std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
  failures += !pass;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string f(const char* fmt, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

const verify::Check* find(const verify::VerificationReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "tf-corner");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path out = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "tf_corner_acceptance";
  fs::remove_all(out);

  // 1
  {
    const auto t0 = std::chrono::steady_clock::now();
    const auto hm = painleve::solve_full_line(2.0, -30.0, 15.0, 4000);
    const double d = painleve::hm_identity_defect(hm);
    const double sec = seconds_since(t0);
    report(1, std::abs(d) <= 1e-6 && sec <= 5.0, f("identity defect %.3e (<= 1e-6), %.2f s (<= 5 s)", std::abs(d), sec));
  }
  const auto hm = std::make_shared<const painleve::ProfileSolution>(painleve::solve_full_line(2.0, -30.0, 15.0, 4000));

  // 2
  {
    const double c = (painleve::evaluate(*hm, -20.0).v - std::sqrt(20.0)) * std::pow(20.0, 2.5);
    report(2, std::abs(c / -0.125 - 1.0) <= 0.05, f("(V(-20) - sqrt 20) 20^{5/2} = %.6f (-0.125 +- 5%%)", c));
  }

  // 3
  {
    const auto a = painleve::linearization(*hm);
    const auto b = painleve::linearization(painleve::solve_full_line(2.0, -30.0, 15.0, 8000));
    const double dp = std::abs(a.potential_min - b.potential_min), dm = std::abs(a.mu1 - b.mu1);
    report(3, a.potential_min > 0 && a.mu1 > 0 && dp <= 1e-4 && dm <= 1e-4,
           f("min(3V^2+x) = %.6f, mu1 = %.6f, doubling shifts %.1e", a.potential_min, a.mu1, std::max(dp, dm)));
  }

  // 4
  {
    const double v0 = painleve::evaluate(*hm, 0.0).v, shoot = oracle::hastings_mcleod_v0(-6.0);
    const auto n0 = painleve::solve_half_line_neumann(2.0, 30.0, 4000);
    painleve::SolveOptions o;
    o.guess_scale = 0.1;
    const auto n1 = painleve::solve_half_line_neumann(2.0, 30.0, 4000, o);
    double diff = 0;
    for (std::size_t i = 0; i < n0.v.size(); ++i) diff = std::max(diff, std::abs(n0.v[i] - n1.v[i]));
    report(4, std::abs(v0 - shoot) <= 1e-7 && diff <= 1e-8,
           f("|V(0) - shooting| = %.2e (<= 1e-7), Neumann guess sensitivity %.2e (<= 1e-8)", std::abs(v0 - shoot), diff));
  }

  // 5
  {
    bool ok = true;
    std::string msg;
    for (double L : {1.0, 0.8}) {
      const auto t0 = std::chrono::steady_clock::now();
      const double l0 = trap::compute_lambda0(trap::Trap::harmonic(L));
      const double sec = seconds_since(t0);
      const double err = std::abs(l0 - std::sqrt(2 * L / std::numbers::pi));
      ok = ok && err <= 1e-8 && sec <= 1.0;
      msg += f("Lambda=%.1f err %.1e in %.3f s; ", L, err, sec);
    }
    report(5, ok, msg);
  }

  // 6-11 share the ladder
  const auto t_ladder = std::chrono::steady_clock::now();
  const auto harness = verify::run(trap::Trap::harmonic(1.0), {0.05, 0.03, 0.02, 0.01}, 4001, 4);
  const double ladder_sec = seconds_since(t_ladder);
  const auto& rep = harness.report;
  {
    std::vector<double> eps, gap;
    for (const auto& m : harness.rows) {
      eps.push_back(m.eps);
      gap.push_back(m.lambda - m.lambda0);
    }
    const auto fit = verify::rate_fit(eps, gap, 1.0);
    report(6, fit.exponent >= 1.8 && fit.r_squared >= 0.98 && ladder_sec <= 120.0,
           f("exponent %.4f (>= 1.8), r^2 %.5f (>= 0.98), ladder %.1f s", fit.exponent, fit.r_squared, ladder_sec));
  }
  {
    const auto* c = find(rep, "energy_log_slope");
    const double cm2 = harness.rows.back().c_m2;
    report(7, c && c->pass && std::abs(cm2 - 0.265965) <= 1e-5,
           f("slope %.6f vs c_log %.6f, c_-2 = %.6f", c ? c->value : NAN, c ? c->threshold : NAN, cm2));
  }
  {
    const auto* c = find(rep, "corner_inner_band");
    report(8, c && c->pass, f("inner-band max/min %.4f (<= 3)", c ? c->value : NAN));
  }
  {
    const auto* a = find(rep, "holder_half");
    const auto* b = find(rep, "holder_06_increasing");
    report(9, a && b && a->pass && b->pass,
           f("C^{1/2} max/min %.4f (<= 1.5); C^0.6 ratio last/first %.4f, strictly increasing: ", a ? a->value : NAN,
             b ? b->value : NAN) +
               (b && b->pass ? "yes" : "no"));
  }
  {
    const auto* a = find(rep, "monotonicity_sign");
    const auto* b = find(rep, "monotonicity_constant");
    report(10, a && b && a->pass && b->pass,
           f("max weighted derivative %.4e (< 0), c max/min %.4f (<= 2)", a ? a->value : NAN, b ? b->value : NAN));
  }
  {
    const auto* a = find(rep, "f_sup_rate");
    const auto* b = find(rep, "f_boundary_value");
    report(11, a && b && a->pass && b->pass,
           f("sup|f-f0| eps^{-1/2} max/min %.4f (<= 2); f(R)/eps^{2/3} = %.5f vs %.5f (15%%)", a ? a->value : NAN,
             b ? b->value : NAN, b ? b->threshold : NAN));
  }

  // 12
  {
    const auto t = trap::Trap::harmonic(1.0);
    const auto t0 = std::chrono::steady_clock::now();
    const double box = 1.5 * t.support_bound(trap::compute_lambda0(t)) * 1.0001;
    const auto g2 = gp::solve_2d(t, 0.05, box, 256);
    const double sec = seconds_since(t0);
    const auto rad = gp::solve_radial(t, 0.05);
    double sup = 0;
    for (int j = 0; j < g2.n2; ++j)
      for (int i = 0; i < g2.n2; ++i)
        sup = std::max(sup, std::abs(g2.at(i, j) - gp::eval_radial(rad, std::hypot(g2.axis[i], g2.axis[j])).v));
    report(12, sup <= 5e-3 && sec <= 600.0, f("sup |eta_2d - eta_radial| = %.3e (<= 5e-3), %.1f s", sup, sec));
  }

  // 13
  {
    const std::vector<std::vector<std::string>> runs = {
        {"painleve", "--p", "2", "--xmin", "-30", "--xmax", "15", "--n", "4000"},
        {"trap", "--trap", "harmonic", "--aniso", "0.8"},
        {"ground", "--eps", "0.05,0.02"},
        {"ground", "--eps", "0.05", "--box", "1.34", "--n", "256"},
        {"approx", "--eps", "0.05,0.02"},
        {"verify", "--eps", "0.05,0.03,0.02,0.01", "--jobs", "JOBS"},
        {"sweep", "--eps", "0.05,0.02,0.01", "--jobs", "JOBS"},
    };
    bool ok = true;
    std::size_t compared = 0;
    for (std::size_t k = 0; k < runs.size(); ++k) {
      const fs::path a = out / ("run" + std::to_string(k) + "_a"), b = out / ("run" + std::to_string(k) + "_b");
      auto args_a = runs[k], args_b = runs[k];
      for (auto& s : args_a) if (s == "JOBS") s = "1";
      for (auto& s : args_b) if (s == "JOBS") s = "4";
      args_a.insert(args_a.end(), {"--out", a.string()});
      args_b.insert(args_b.end(), {"--out", b.string()});
      ok = ok && run_cli(args_a) == 0 && run_cli(args_b) == 0;
      for (const auto& e : fs::recursive_directory_iterator(a)) {
        if (!e.is_regular_file()) continue;
        const auto other = b / fs::relative(e.path(), a);
        ok = ok && fs::exists(other) && slurp(e.path()) == slurp(other);
        ++compared;
      }
    }
    report(13, ok && compared > 0, f("%.0f artifacts compared byte for byte across repeated runs", compared));
  }

  std::printf("%d of 13 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
