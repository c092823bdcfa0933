#include "tfc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "tfc/error.hpp"
#include "tfc/numerics.hpp"

namespace tfc::svg {

namespace {

constexpr double kW = 720, kH = 480, kL = 80, kR = 160, kT = 40, kB = 60;
const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else o += c;
  }
  return o;
}

// "--" is not allowed inside XML comments
std::string comment_safe(std::string s) {
  for (std::size_t i; (i = s.find("--")) != std::string::npos;) s.replace(i, 2, "- -");
  return s;
}

}  // namespace

std::string render(const Plot& p) {
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  const auto tx = [&](double v) { return p.log_x ? std::log10(v) : v; };
  const auto ty = [&](double v) { return p.log_y ? std::log10(v) : v; };
  for (const auto& s : p.series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(tx(s.x[i])) || !std::isfinite(ty(s.y[i]))) continue;
      x0 = std::min(x0, tx(s.x[i]));
      x1 = std::max(x1, tx(s.x[i]));
      y0 = std::min(y0, ty(s.y[i]));
      y1 = std::max(y1, ty(s.y[i]));
    }
  }
  if (!std::isfinite(x0)) throw ConfigError("plot: no finite data");
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  const double pw = kW - kL - kR, ph = kH - kT - kB;
  const auto X = [&](double v) { return kL + (tx(v) - x0) / (x1 - x0) * pw; };
  const auto Y = [&](double v) { return kT + (1 - (ty(v) - y0) / (y1 - y0)) * ph; };

  std::string o = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!--\n";
  for (const auto& line : p.provenance) o += "  " + comment_safe(line) + "\n";
  o += "-->\n";
  o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(kW) + "\" height=\"" + px(kH) +
       "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o += "<text x=\"" + px(kW / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" + escape(p.title) +
       "</text>\n";
  o += "<rect x=\"" + px(kL) + "\" y=\"" + px(kT) + "\" width=\"" + px(pw) + "\" height=\"" + px(ph) +
       "\" fill=\"none\" stroke=\"black\"/>\n";

  // ticks: 5 per axis, labelled in data units
  for (int k = 0; k <= 4; ++k) {
    const double fx = x0 + k * (x1 - x0) / 4, fy = y0 + k * (y1 - y0) / 4;
    const double vx = p.log_x ? std::pow(10, fx) : fx, vy = p.log_y ? std::pow(10, fy) : fy;
    const double sx = kL + k * pw / 4, sy = kT + ph - k * ph / 4;
    o += "<line x1=\"" + px(sx) + "\" y1=\"" + px(kT + ph) + "\" x2=\"" + px(sx) + "\" y2=\"" + px(kT + ph + 5) +
         "\" stroke=\"black\"/>\n";
    o += "<text x=\"" + px(sx) + "\" y=\"" + px(kT + ph + 18) + "\" text-anchor=\"middle\">" + num(vx) + "</text>\n";
    o += "<line x1=\"" + px(kL - 5) + "\" y1=\"" + px(sy) + "\" x2=\"" + px(kL) + "\" y2=\"" + px(sy) +
         "\" stroke=\"black\"/>\n";
    o += "<text x=\"" + px(kL - 8) + "\" y=\"" + px(sy + 4) + "\" text-anchor=\"end\">" + num(vy) + "</text>\n";
  }
  o += "<text x=\"" + px(kL + pw / 2) + "\" y=\"" + px(kH - 15) + "\" text-anchor=\"middle\">" + escape(p.xlabel) +
       "</text>\n";
  o += "<text x=\"18\" y=\"" + px(kT + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
       px(kT + ph / 2) + ")\">" + escape(p.ylabel) + "</text>\n";

  for (std::size_t s = 0; s < p.series.size(); ++s) {
    const auto& sr = p.series[s];
    const char* col = kColors[s % std::size(kColors)];
    o += "<polyline fill=\"none\" stroke=\"" + std::string(col) + "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < sr.x.size(); ++i) {
      if (!std::isfinite(tx(sr.x[i])) || !std::isfinite(ty(sr.y[i]))) continue;
      if (!first) o += ' ';
      o += px(X(sr.x[i])) + "," + px(Y(sr.y[i]));
      first = false;
    }
    o += "\"/>\n";
    if (sr.x.size() <= 20) {
      for (std::size_t i = 0; i < sr.x.size(); ++i) {
        if (!std::isfinite(tx(sr.x[i])) || !std::isfinite(ty(sr.y[i]))) continue;
        o += "<circle cx=\"" + px(X(sr.x[i])) + "\" cy=\"" + px(Y(sr.y[i])) + "\" r=\"3\" fill=\"" + col + "\"/>\n";
      }
    }
    const double ly = kT + 16 + 18 * s;
    o += "<line x1=\"" + px(kL + pw + 12) + "\" y1=\"" + px(ly - 4) + "\" x2=\"" + px(kL + pw + 32) + "\" y2=\"" +
         px(ly - 4) + "\" stroke=\"" + col + "\" stroke-width=\"2\"/>\n";
    o += "<text x=\"" + px(kL + pw + 38) + "\" y=\"" + px(ly) + "\">" + escape(sr.name) + "</text>\n";
  }

  if (p.power_fit) {
    const auto [C, q] = *p.power_fit;
    const double a = std::pow(10, x0), b = std::pow(10, x1);
    o += "<line x1=\"" + px(X(a)) + "\" y1=\"" + px(Y(C * std::pow(a, q))) + "\" x2=\"" + px(X(b)) + "\" y2=\"" +
         px(Y(C * std::pow(b, q))) + "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";
  }
  if (!p.annotation.empty()) {
    o += "<text x=\"" + px(kL + 10) + "\" y=\"" + px(kT + 18) + "\">" + escape(p.annotation) + "</text>\n";
  }
  o += "</svg>\n";
  return o;
}

Plot plot_from_table(const io::Table& t, const std::string& source) {
  if (t.header.size() < 2) throw ConfigError("plot: need at least two columns in " + source);
  if (t.rows.empty()) throw ConfigError("plot: no data rows in " + source);
  Plot p;
  p.title = source;
  p.xlabel = t.header[0];
  p.provenance = {"source: " + source, "columns: " + std::to_string(t.header.size()),
                  "rows: " + std::to_string(t.rows.size())};
  const auto x = t.column(0);
  if (t.header.size() == 2) {
    const auto y = t.column(1);
    const bool positive = std::all_of(x.begin(), x.end(), [](double v) { return v > 0; }) &&
                          std::all_of(y.begin(), y.end(), [](double v) { return v > 0; });
    if (positive && x.size() >= 2) {
      std::vector<double> lx, ly;
      for (std::size_t i = 0; i < x.size(); ++i) {
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
      }
      const auto fit = num::fit_line(lx, ly);
      p.log_x = p.log_y = true;
      p.ylabel = t.header[1];
      p.series.push_back({t.header[1], x, y});
      p.power_fit = std::make_pair(std::exp(fit.intercept), fit.slope);
      char buf[128];
      std::snprintf(buf, sizeof buf, "fit: %s = %.4g * %s^%.4f  (r^2 = %.5f)", t.header[1].c_str(),
                    std::exp(fit.intercept), t.header[0].c_str(), fit.slope, fit.r_squared);
      p.annotation = buf;
      p.provenance.push_back(buf);
      return p;
    }
  }
  for (std::size_t j = 1; j < t.header.size(); ++j) p.series.push_back({t.header[j], x, t.column(j)});
  p.ylabel = "value";
  return p;
}

}  // namespace tfc::svg
