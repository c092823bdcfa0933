#include "tfc/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tfc/error.hpp"

namespace tfc::io {

using json = nlohmann::ordered_json;

std::vector<double> Table::column(std::size_t j) const {
  std::vector<double> c;
  c.reserve(rows.size());
  for (const auto& r : rows) c.push_back(r.at(j));
  return c;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t j = 0; j < t.header.size(); ++j) out += (j ? "," : "") + t.header[j];
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += format_double(row[j]);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ',')) parts.push_back(cur);
  if (!line.empty() && line.back() == ',') parts.emplace_back();
  return parts;
}

double parse_number(const std::string& s, std::size_t line_no) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ConfigError("csv line " + std::to_string(line_no) + ": not a number: '" + s + "'");
  }
  return v;
}

}  // namespace

Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (t.header.empty()) {
      t.header = split(line);
      continue;
    }
    const auto parts = split(line);
    if (parts.size() != t.header.size()) {
      throw ConfigError("csv line " + std::to_string(line_no) + ": expected " + std::to_string(t.header.size()) +
                        " fields, got " + std::to_string(parts.size()));
    }
    std::vector<double> row;
    for (const auto& p : parts) row.push_back(parse_number(p, line_no));
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw ConfigError("csv: empty input");
  if (t.rows.empty()) throw ConfigError("csv: no data rows");
  return t;
}

Table read_csv(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_csv(ss.str());
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << text;
}

void write_csv(const fs::path& path, const Table& t) { write_text(path, to_csv(t)); }

Table profile_table(const painleve::ProfileSolution& sol) {
  Table t{{"x", "v", "vx"}, {}};
  for (std::size_t i = 0; i < sol.x.size(); ++i) t.rows.push_back({sol.x[i], sol.v[i], sol.vx[i]});
  return t;
}

Table tf_table(const trap::TFData& tf) {
  Table t{{"theta", "x", "y", "beta", "curvature"}, {}};
  for (std::size_t i = 0; i < tf.theta.size(); ++i) {
    t.rows.push_back({tf.theta[i], tf.px[i], tf.py[i], tf.beta[i], tf.curvature[i]});
  }
  return t;
}

Table radial_table(const gp::GroundState& gs) {
  Table t{{"r", "eta", "eta_r", "W"}, {}};
  for (std::size_t i = 0; i < gs.r.size(); ++i) {
    t.rows.push_back({gs.r[i], gs.eta[i], gs.eta_r[i], gs.trap.W_r(gs.r[i])});
  }
  return t;
}

Table grid_table(const gp::GroundState& gs) {
  Table t{{"eta"}, {}};
  for (double v : gs.eta) t.rows.push_back({v});
  return t;
}

std::string grid_sidecar(const gp::GroundState& gs) {
  json j;
  j["layout"] = "row-major, y2 is the row index";
  j["x_min"] = gs.axis.front();
  j["x_max"] = gs.axis.back();
  j["box_half"] = gs.box;
  j["n_nodes"] = gs.n2;
  j["epsilon"] = gs.epsilon;
  j["lambda_eps"] = gs.lambda;
  j["lambda0"] = gs.lambda0;
  j["mass"] = gs.mass;
  j["residual"] = gs.residual;
  j["trap"] = gs.trap.describe();
  return j.dump(2) + "\n";
}

Table section_table(const std::vector<layers::SectionRow>& rows) {
  Table t{{"t", "theta", "u_ap", "inner", "tf"}, {}};
  for (const auto& r : rows) t.rows.push_back({r.t, r.theta, r.u_ap, r.inner, r.tf});
  return t;
}

Table measurement_table(const std::vector<verify::Measurement>& rows) {
  Table t;
  const auto& fields = verify::measurement_fields();
  for (const auto& f : fields) t.header.emplace_back(f.name);
  for (const auto& m : rows) {
    std::vector<double> row;
    for (const auto& f : fields) row.push_back(m.*(f.ptr));
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<verify::Measurement> measurements_from(const Table& t) {
  const auto& fields = verify::measurement_fields();
  std::vector<std::size_t> idx;
  for (const auto& f : fields) {
    std::size_t j = 0;
    while (j < t.header.size() && t.header[j] != f.name) ++j;
    if (j == t.header.size()) throw ConfigError(std::string("measurements: missing column ") + f.name);
    idx.push_back(j);
  }
  std::vector<verify::Measurement> out;
  for (const auto& row : t.rows) {
    verify::Measurement m;
    for (std::size_t k = 0; k < fields.size(); ++k) m.*(fields[k].ptr) = row[idx[k]];
    out.push_back(m);
  }
  return out;
}

namespace {

json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

}  // namespace

std::string report_json(const verify::VerificationReport& rep) {
  json j;
  j["trap"] = rep.trap;
  j["n"] = rep.n;
  j["eps"] = rep.eps;
  json checks = json::array();
  std::size_t passed = 0;
  for (const auto& c : rep.checks) {
    json e;
    e["name"] = c.name;
    e["anchor"] = c.anchor;
    e["value"] = number(c.value);
    e["threshold"] = number(c.threshold);
    e["relation"] = c.relation;
    e["pass"] = c.pass;
    if (!c.note.empty()) e["note"] = c.note;
    checks.push_back(std::move(e));
    passed += c.pass;
  }
  j["passed"] = passed;
  j["total"] = rep.checks.size();
  j["checks"] = std::move(checks);
  return j.dump(2) + "\n";
}

std::string report_csv(const verify::VerificationReport& rep) {
  const auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  std::string out = "name,anchor,value,threshold,relation,pass\n";
  for (const auto& c : rep.checks) {
    out += c.name + "," + quote(c.anchor) + "," + format_double(c.value) + "," + format_double(c.threshold) + "," +
           quote(c.relation) + "," + (c.pass ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace tfc::io
