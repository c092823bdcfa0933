#include "tfc/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "tfc/error.hpp"
#include "tfc/gpsolve.hpp"
#include "tfc/io.hpp"
#include "tfc/layers.hpp"
#include "tfc/painleve.hpp"
#include "tfc/svg.hpp"
#include "tfc/verify.hpp"

namespace tfc::cli {

namespace {

const std::vector<std::string> kCommands = {"painleve", "trap", "ground", "approx", "verify", "sweep", "plot"};
const std::vector<std::string> kKeys = {"trap", "aniso", "bump-a", "bump-b", "table", "eps", "n",   "rmax",
                                        "box",  "p",     "xmin",   "xmax",   "out",   "jobs", "tol", "csv"};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': not a number: '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d != std::floor(d) || std::abs(d) > 1e9) throw ConfigError("key '" + key + "': not an integer: '" + v + "'");
  return static_cast<int>(d);
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}

std::string eps_tag(double e) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", e);
  return buf;
}

void say(const std::string& s) { std::cout << s << std::endl; }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

std::string RunConfig::canonical() const {
  std::string s = "command=" + command + "\n";
  s += "trap=" + trap_kind + "\n";
  if (trap_kind == "harmonic") s += "aniso=" + io::format_double(aniso) + "\n";
  if (trap_kind == "gaussian") s += "bump-a=" + io::format_double(bump_a) + "\nbump-b=" + io::format_double(bump_b) + "\n";
  if (trap_kind == "table") s += "table=" + table + "\n";
  s += "eps=";
  for (std::size_t i = 0; i < eps.size(); ++i) s += (i ? "," : "") + io::format_double(eps[i]);
  s += "\n";
  if (n) s += "n=" + std::to_string(*n) + "\n";
  if (rmax) s += "rmax=" + io::format_double(*rmax) + "\n";
  if (box) s += "box=" + io::format_double(*box) + "\n";
  s += "p=" + io::format_double(p) + "\nxmin=" + io::format_double(xmin) + "\nxmax=" + io::format_double(xmax) + "\n";
  if (tol) s += "tol=" + io::format_double(*tol) + "\n";
  return s;
}

std::string RunConfig::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(no) + ": expected key=value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

RunConfig resolve(const std::string& command, const std::map<std::string, std::string>& raw) {
  if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end()) {
    throw ConfigError("unknown command '" + command + "'");
  }
  RunConfig c;
  c.command = command;
  for (const auto& [k, v] : raw) {
    if (std::find(kKeys.begin(), kKeys.end(), k) == kKeys.end()) throw ConfigError("unknown key '" + k + "'");
  }
  const auto get = [&](const char* k) -> const std::string* {
    const auto it = raw.find(k);
    return it == raw.end() ? nullptr : &it->second;
  };
  if (auto v = get("trap")) {
    if (*v != "harmonic" && *v != "gaussian" && *v != "table") {
      throw ConfigError("key 'trap': unknown trap kind '" + *v + "' (harmonic, gaussian or table)");
    }
    c.trap_kind = *v;
  }
  if (auto v = get("aniso")) c.aniso = to_double("aniso", *v);
  if (auto v = get("bump-a")) c.bump_a = to_double("bump-a", *v);
  if (auto v = get("bump-b")) c.bump_b = to_double("bump-b", *v);
  if (auto v = get("table")) c.table = *v;
  if (auto v = get("eps")) c.eps = to_list("eps", *v);
  if (auto v = get("n")) c.n = to_int("n", *v);
  if (auto v = get("rmax")) c.rmax = to_double("rmax", *v);
  if (auto v = get("box")) c.box = to_double("box", *v);
  if (auto v = get("p")) c.p = to_double("p", *v);
  if (auto v = get("xmin")) c.xmin = to_double("xmin", *v);
  if (auto v = get("xmax")) c.xmax = to_double("xmax", *v);
  if (auto v = get("out")) c.out = *v;
  if (auto v = get("jobs")) c.jobs = to_int("jobs", *v);
  if (auto v = get("tol")) c.tol = to_double("tol", *v);

  if (c.eps.empty()) {
    if (command == "verify" || command == "sweep") c.eps = {0.05, 0.03, 0.02, 0.01};
    else c.eps = {0.05};
  }
  for (std::size_t i = 0; i < c.eps.size(); ++i) {
    if (!(c.eps[i] > 0.0)) throw ConfigError("key 'eps': values must be positive");
    if (i > 0 && !(c.eps[i] < c.eps[i - 1])) throw ConfigError("key 'eps': values must be strictly decreasing");
  }
  if (c.trap_kind == "table" && c.table.empty()) throw ConfigError("key 'table': required when trap = table");
  if (!(c.aniso > 0.0)) throw ConfigError("key 'aniso': must be positive");
  if (c.jobs < 1) throw ConfigError("key 'jobs': must be >= 1");
  if (c.n && *c.n < 1) throw ConfigError("key 'n': must be positive");
  if (c.tol && !(*c.tol > 0.0)) throw ConfigError("key 'tol': must be positive");
  return c;
}

trap::Trap make_trap(const RunConfig& cfg) {
  if (cfg.trap_kind == "harmonic") return trap::Trap::harmonic(cfg.aniso);
  if (cfg.trap_kind == "gaussian") return trap::Trap::gaussian_bump(cfg.bump_a, cfg.bump_b);
  const auto t = io::read_csv(cfg.table);
  if (t.header.size() != 2) throw ConfigError("table " + cfg.table + ": expected columns r,W");
  return trap::Trap::radial_table(t.column(0), t.column(1));
}

namespace {

namespace fs = std::filesystem;

void cmd_painleve(const RunConfig& c) {
  const int n = c.n.value_or(4000);
  const auto sol = painleve::solve_full_line(c.p, c.xmin, c.xmax, n);
  io::write_csv(fs::path(c.out) / "hm.csv", io::profile_table(sol));
  std::string line = "painleve: p = " + io::format_double(c.p) + ", V(0) = " +
                     fmt("%.12g", painleve::evaluate(sol, 0.0).v) +
                     ", residual = " + fmt("%.3g", sol.residual_sup);
  if (c.p == 2.0) line += ", identity defect = " + fmt("%.3g", painleve::hm_identity_defect(sol));
  say(line + " -> hm.csv");
}

void cmd_trap(const RunConfig& c) {
  const auto tr = make_trap(c);
  const double l0 = trap::compute_lambda0(tr);
  const auto tf = trap::boundary_and_beta(tr, l0, c.n.value_or(256));
  io::write_csv(fs::path(c.out) / "tf.csv", io::tf_table(tf));
  say("trap: " + tr.describe() + ", lambda0 = " + fmt("%.15g", l0) + ", ell = " + fmt("%.12g", tf.ell) +
      " -> tf.csv");
}

double default_box(const trap::Trap& tr) {
  return 1.5 * tr.support_bound(trap::compute_lambda0(tr)) * 1.0001;
}

void cmd_ground(const RunConfig& c) {
  const auto tr = make_trap(c);
  const bool radial = tr.radial() && !c.box;
  for (double e : c.eps) {
    if (radial) {
      gp::RadialOptions opt;
      if (c.tol) opt.tol = *c.tol;
      const auto gs = gp::solve_radial(tr, e, c.rmax.value_or(0.0), c.n.value_or(4001), opt);
      const std::string name = "ground_radial_eps" + eps_tag(e) + ".csv";
      io::write_csv(fs::path(c.out) / name, io::radial_table(gs));
      say("ground: radial eps = " + eps_tag(e) + ", lambda = " + fmt("%.12g", gs.lambda) +
          ", energy = " + fmt("%.12g", gs.energy.total) + ", residual = " + fmt("%.3g", gs.residual) + " -> " + name);
    } else {
      gp::FlowOptions opt;
      if (c.tol) opt.residual_tol = *c.tol;
      const auto gs = gp::solve_2d(tr, e, c.box.value_or(default_box(tr)), c.n.value_or(256), opt);
      const std::string stem = "ground_2d_eps" + eps_tag(e);
      io::write_csv(fs::path(c.out) / (stem + ".csv"), io::grid_table(gs));
      io::write_text(fs::path(c.out) / (stem + ".json"), io::grid_sidecar(gs));
      say("ground: 2-D eps = " + eps_tag(e) + ", lambda = " + fmt("%.12g", gs.lambda) + ", steps = " +
          std::to_string(gs.iterations) + " -> " + stem + ".csv");
    }
  }
}

void cmd_approx(const RunConfig& c) {
  const auto tr = make_trap(c);
  auto hm = std::make_shared<const painleve::ProfileSolution>(painleve::solve_full_line(2.0, -30.0, 15.0, 4000));
  const double l0 = trap::compute_lambda0(tr);
  const auto tf = trap::boundary_and_beta(tr, l0, 256);
  for (double e : c.eps) {
    const auto ap = layers::build_u_ap(tf, hm, e);
    const double e23 = std::pow(e, 2.0 / 3.0);
    const double span = std::min(4.0 * ap.delta(), ap.delta0());
    std::vector<double> ts;
    const int m = c.n.value_or(801);
    for (int i = 0; i < m; ++i) ts.push_back(-span + 2.0 * span * i / (m - 1));
    const auto rows = layers::normal_section(ap, 0.0, ts);
    const std::string name = "section_eps" + eps_tag(e) + ".csv";
    io::write_csv(fs::path(c.out) / name, io::section_table(rows));
    const auto y = tf.from_fermi(0.0, 0.0);
    say("approx: eps = " + eps_tag(e) + ", delta = " + fmt("%.6g", ap.delta()) + ", L = " + fmt("%.6g", ap.L()) +
        ", stretched residual at boundary = " + fmt("%.3g", layers::stretched_residual(ap, y[0], y[1], e23 / 40)) +
        " -> " + name);
  }
}

void write_report(const fs::path& dir, const verify::VerificationReport& rep,
                  const std::vector<verify::Measurement>& rows) {
  io::write_csv(dir / "measurements.csv", io::measurement_table(rows));
  io::write_text(dir / "report.json", io::report_json(rep));
  io::write_text(dir / "report.csv", io::report_csv(rep));
  io::Table gap{{"eps", "lambda_gap"}, {}};
  for (const auto& m : rows) gap.rows.push_back({m.eps, m.lambda - m.lambda0});
  io::write_csv(dir / "lambda_gap.csv", gap);
  std::size_t pass = 0;
  for (const auto& ch : rep.checks) pass += ch.pass;
  say("verify: " + std::to_string(pass) + "/" + std::to_string(rep.checks.size()) +
      " checks pass -> report.json, report.csv, measurements.csv");
  for (const auto& ch : rep.checks) {
    if (!ch.pass) say("  FAIL " + ch.name + ": value " + fmt("%.6g", ch.value) + " vs " + fmt("%.6g", ch.threshold));
  }
}

void cmd_verify(const RunConfig& c) {
  const auto tr = make_trap(c);
  if (!tr.radial()) throw ConfigError("verify: radial traps only (trap = " + tr.describe() + ")");
  const auto res = verify::run(tr, c.eps, c.n.value_or(4001), c.jobs);
  write_report(c.out, res.report, res.rows);
}

// one job per eps, each in its own hash-named directory; the merge is single-threaded
void cmd_sweep(const RunConfig& c) {
  const auto tr = make_trap(c);
  if (!tr.radial()) throw ConfigError("sweep: radial traps only (trap = " + tr.describe() + ")");
  const int n = c.n.value_or(4001);
  auto hm = std::make_shared<const painleve::ProfileSolution>(painleve::solve_full_line(2.0, -30.0, 15.0, 4000));
  const double gamma = painleve::connection_ratio(*hm).ratio;
  const double pot_min = painleve::linearization(*hm).potential_min;
  std::vector<verify::Measurement> rows(c.eps.size());
  std::vector<std::string> dirs(c.eps.size());
  std::vector<std::exception_ptr> errors(c.eps.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (std::size_t k = next++; k < c.eps.size(); k = next++) {
      try {
        RunConfig job = c;
        job.command = "ground";
        job.eps = {c.eps[k]};
        job.n = n;
        dirs[k] = job.hash();
        const fs::path dir = fs::path(c.out) / dirs[k];
        const auto gs = gp::solve_radial(tr, c.eps[k], c.rmax.value_or(0.0), n);
        io::write_csv(dir / "ground.csv", io::radial_table(gs));
        io::write_text(dir / "config.txt", job.canonical());
        rows[k] = verify::measure(tr, c.eps[k], n, hm, gamma, pot_min);
        io::write_csv(dir / "measurement.csv", io::measurement_table({rows[k]}));
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min<int>(c.jobs, static_cast<int>(c.eps.size())); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (std::size_t k = 0; k < c.eps.size(); ++k) say("sweep: eps = " + eps_tag(c.eps[k]) + " -> " + dirs[k] + "/");
  write_report(c.out, verify::assemble(rows, tr.describe(), n), rows);
}

void cmd_plot(const std::vector<std::string>& csvs, const RunConfig& c) {
  if (csvs.empty()) throw ConfigError("plot: give at least one --csv FILE");
  for (const auto& f : csvs) {
    const auto t = io::read_csv(f);
    const auto name = fs::path(f).filename().string();
    const auto svg = svg::render(svg::plot_from_table(t, name));
    const auto out = fs::path(c.out) / (fs::path(f).stem().string() + ".svg");
    io::write_text(out, svg);
    say("plot: " + name + " -> " + out.filename().string());
  }
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Thomas-Fermi corner-layer toolkit"};
  app.set_help_flag("-h,--help");
  std::string command;
  app.add_option("command", command, "painleve | trap | ground | approx | verify | sweep | plot")->required();
  std::map<std::string, std::string> flags;
  std::vector<std::string> csvs;
  std::string config_file;
  for (const auto& k : kKeys) {
    if (k == "csv") continue;
    app.add_option("--" + k, flags[k]);
  }
  app.add_option("--csv", csvs, "CSV files for the plot command");
  app.add_option("--config", config_file, "flat key=value file; flags take precedence");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    std::map<std::string, std::string> raw;
    if (!config_file.empty()) {
      std::ifstream f(config_file);
      if (!f) throw ConfigError("cannot open config file " + config_file);
      std::stringstream ss;
      ss << f.rdbuf();
      raw = parse_config_text(ss.str());
      if (raw.count("csv")) throw ConfigError("unknown key 'csv' in config file");
    }
    if (!raw.count("jobs")) {
      if (const char* env = std::getenv("TF_CORNER_JOBS")) raw["jobs"] = env;
    }
    for (const auto& k : kKeys) {
      if (k != "csv" && app.count("--" + k)) raw[k] = flags[k];
    }
    const RunConfig cfg = resolve(command, raw);
    fs::create_directories(cfg.out);
    if (cfg.command == "painleve") cmd_painleve(cfg);
    else if (cfg.command == "trap") cmd_trap(cfg);
    else if (cfg.command == "ground") cmd_ground(cfg);
    else if (cfg.command == "approx") cmd_approx(cfg);
    else if (cfg.command == "verify") cmd_verify(cfg);
    else if (cfg.command == "sweep") cmd_sweep(cfg);
    else cmd_plot(csvs, cfg);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const ParameterError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const TopologyError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << " (last residual " << e.last_residual() << ")\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace tfc::cli
