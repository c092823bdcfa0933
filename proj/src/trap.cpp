#include "tfc/trap.hpp"

#include <algorithm>
#include <boost/math/special_functions/fpclassify.hpp>
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "tfc/error.hpp"
#include "tfc/numerics.hpp"

using boost::math::isnan;

namespace tfc::trap {

struct Trap::Table {
  std::vector<double> r, w;
  boost::math::interpolators::pchip<std::vector<double>> spline;
  double r_end, w_end, dw_end;
  Table(std::vector<double> rr, std::vector<double> ww)
      : r(rr), w(ww), spline(std::move(rr), std::move(ww)) {
    r_end = r.back();
    w_end = w.back();
    dw_end = spline.prime(r_end);
  }
  double value(double x) const {
    if (x <= r_end) return spline(x);
    const double d = x - r_end;
    return w_end + dw_end * d + d * d;
  }
  double slope(double x) const {
    if (x <= r_end) return spline.prime(x);
    return dw_end + 2.0 * (x - r_end);
  }
};

namespace {

using boost::math::tools::eps_tolerance;
using boost::math::tools::toms748_solve;

double root(const std::function<double(double)>& f, double lo, double hi) {
  std::uintmax_t it = 200;
  const auto r = toms748_solve(f, lo, hi, eps_tolerance<double>(52), it);
  return 0.5 * (r.first + r.second);
}

}  // namespace

std::string to_string(Kind k) {
  switch (k) {
    case Kind::Harmonic: return "harmonic";
    case Kind::GaussianBump: return "gaussian";
    case Kind::RadialTable: return "table";
  }
  return "unknown";
}

Trap Trap::harmonic(double aniso) {
  if (!(aniso > 0.0 && aniso <= 1.0)) throw DomainError("harmonic trap: anisotropy must lie in (0, 1]");
  Trap t;
  t.kind_ = Kind::Harmonic;
  t.aniso_ = aniso;
  return t;
}

Trap Trap::gaussian_bump(double a, double b) {
  if (!(a >= 0.0) || !(b > 0.0)) throw DomainError("gaussian trap: need a >= 0 and b > 0");
  Trap t;
  t.kind_ = Kind::GaussianBump;
  t.a_ = a;
  t.b_ = b;
  return t;
}

Trap Trap::radial_table(std::vector<double> r, std::vector<double> w) {
  if (r.size() < 4 || r.size() != w.size()) throw DomainError("table trap: need >= 4 paired samples");
  if (r.front() != 0.0) throw DomainError("table trap: first radius must be 0");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i > 0 && !(r[i] > r[i - 1])) throw DomainError("table trap: radii must increase");
    if (!(w[i] >= 0.0)) throw DomainError("table trap: W must be nonnegative");
  }
  Trap t;
  t.kind_ = Kind::RadialTable;
  t.table_ = std::make_shared<const Table>(std::move(r), std::move(w));
  if (!(t.table_->dw_end > 0.0)) throw DomainError("table trap: W must increase at the last sample");
  return t;
}

bool Trap::radial() const { return kind_ != Kind::Harmonic || aniso_ == 1.0; }

double Trap::W_r(double r) const {
  r = std::abs(r);
  switch (kind_) {
    case Kind::Harmonic:
      if (aniso_ != 1.0) throw DomainError("W_r: anisotropic trap is not radial");
      return r * r;
    case Kind::GaussianBump: return r * r + a_ * std::exp(-b_ * r * r);
    case Kind::RadialTable: return table_->value(r);
  }
  return 0.0;
}

double Trap::dW_r(double r) const {
  switch (kind_) {
    case Kind::Harmonic:
      if (aniso_ != 1.0) throw DomainError("dW_r: anisotropic trap is not radial");
      return 2.0 * r;
    case Kind::GaussianBump: return 2.0 * r - 2.0 * a_ * b_ * r * std::exp(-b_ * r * r);
    case Kind::RadialTable: return r >= 0 ? table_->slope(r) : -table_->slope(-r);
  }
  return 0.0;
}

double Trap::W(double y1, double y2) const {
  if (kind_ == Kind::Harmonic) return y1 * y1 + aniso_ * aniso_ * y2 * y2;
  return W_r(std::hypot(y1, y2));
}

std::array<double, 2> Trap::grad(double y1, double y2) const {
  if (kind_ == Kind::Harmonic) return {2.0 * y1, 2.0 * aniso_ * aniso_ * y2};
  const double r = std::hypot(y1, y2);
  if (r == 0.0) return {0.0, 0.0};
  const double d = dW_r(r) / r;
  return {d * y1, d * y2};
}

double Trap::inf_W() const {
  switch (kind_) {
    case Kind::Harmonic: return 0.0;
    case Kind::GaussianBump: {
      if (a_ * b_ <= 1.0) return std::min(a_, W_r(0.0));  // r^2 + a e^{-b r^2} increasing
      const auto f = [this](double r) { return W_r(r); };
      const auto m = boost::math::tools::brent_find_minima(f, 0.0, std::sqrt(std::log(a_ * b_) / b_) + 1.0, 52);
      return std::min(m.second, a_);
    }
    case Kind::RadialTable: return *std::min_element(table_->w.begin(), table_->w.end());
  }
  return 0.0;
}

double Trap::support_bound(double lambda) const {
  switch (kind_) {
    case Kind::Harmonic: return std::sqrt(std::max(lambda, 0.0)) / aniso_ * 1.0000001 + 1e-12;
    case Kind::GaussianBump: return std::sqrt(std::max(lambda, 0.0)) * 1.0000001 + 1e-12;
    case Kind::RadialTable: {
      double r = table_->r_end;
      while (table_->value(r) <= lambda) r = 2.0 * r + 1.0;
      return r;
    }
  }
  return 0.0;
}

std::string Trap::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::Harmonic: os << "harmonic(aniso=" << aniso_ << ")"; break;
    case Kind::GaussianBump: os << "gaussian(a=" << a_ << ",b=" << b_ << ")"; break;
    case Kind::RadialTable: os << "table(n=" << table_->r.size() << ")"; break;
  }
  return os.str();
}

namespace {

// Intervals of [0, r_hi] on which lambda - W(r) > 0.
std::vector<std::array<double, 2>> positive_intervals(const Trap& trap, double lambda) {
  const double r_hi = trap.support_bound(lambda);
  const int m = 4096;
  std::vector<std::array<double, 2>> out;
  const auto g = [&](double r) { return lambda - trap.W_r(r); };
  double start = -1.0;
  double prev_r = 0.0;
  double prev = g(0.0);
  if (prev > 0) start = 0.0;
  for (int k = 1; k <= m; ++k) {
    const double r = r_hi * k / m;
    const double cur = g(r);
    if ((prev > 0) != (cur > 0)) {
      const double z = (cur == 0.0) ? r : root(g, prev_r, r);
      if (cur > 0 || (cur == 0.0 && prev <= 0)) {
        start = z;
      } else {
        out.push_back({start, z});
        start = -1.0;
      }
    }
    prev = cur;
    prev_r = r;
  }
  if (start >= 0.0) out.push_back({start, r_hi});
  return out;
}

// Star-shaped rays: R(phi) with lambda = W on the ray.
double ray_radius(const Trap& trap, double lambda, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  const auto g = [&](double r) { return trap.W(r * c, r * s) - lambda; };
  double hi = 1.0;
  while (g(hi) <= 0.0) hi *= 2.0;
  return root(g, 0.0, hi);
}

template <class F>
double polar_integral(const Trap& trap, double lambda, F integrand) {
  const int n_phi = 512;
  double sum = 0.0;
  for (int k = 0; k < n_phi; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / n_phi;
    const double R = ray_radius(trap, lambda, phi);
    const double c = std::cos(phi), s = std::sin(phi);
    sum += boost::math::quadrature::gauss<double, 30>::integrate(
        [&](double r) { return r * integrand(lambda - trap.W(r * c, r * s)); }, 0.0, R);
  }
  return sum * 2.0 * std::numbers::pi / n_phi;
}

template <class F>
double radial_integral(const Trap& trap, double lambda, F integrand) {
  double sum = 0.0;
  for (const auto& iv : positive_intervals(trap, lambda)) {
    sum += num::integrate([&](double r) { return r * integrand(lambda - trap.W_r(r)); }, iv[0], iv[1]);
  }
  return 2.0 * std::numbers::pi * sum;
}

}  // namespace

double mass(const Trap& trap, double lambda) {
  if (lambda <= trap.inf_W()) return 0.0;
  const auto lin = [](double a) { return std::max(a, 0.0); };
  return trap.radial() ? radial_integral(trap, lambda, lin) : polar_integral(trap, lambda, lin);
}

double mass_squared(const Trap& trap, double lambda) {
  if (lambda <= trap.inf_W()) return 0.0;
  const auto sq = [](double a) { return a > 0 ? a * a : 0.0; };
  return trap.radial() ? radial_integral(trap, lambda, sq) : polar_integral(trap, lambda, sq);
}

double compute_lambda0(const Trap& trap, double tol) {
  if (!(tol >= 1e-12)) throw DomainError("compute_lambda0: tol must be >= 1e-12");
  const double lo = trap.inf_W();
  double hi = lo + 1.0;
  while (mass(trap, hi) < 1.0) {
    hi = lo + 2.0 * (hi - lo);
    if (hi - lo > 1e6) throw DomainError("compute_lambda0: failed to bracket the unit-mass level");
  }
  const auto f = [&](double l) { return mass(trap, l) - 1.0; };
  const double l0 = root(f, lo, hi);
  if (std::abs(f(l0)) > tol) throw DomainError("compute_lambda0: mass residual above tolerance");
  return l0;
}

double TFData::a_plus(double y1, double y2) const { return std::max(a(y1, y2), 0.0); }

double TFData::density(double y1, double y2) const { return std::sqrt(a_plus(y1, y2)); }

double TFData::beta_at(double th) const {
  if (radial) return beta.front();
  const std::size_t n = theta.size();
  th = std::fmod(th, ell);
  if (th < 0) th += ell;
  const double ds = ell / n;
  const double u = th / ds;
  const std::size_t i = static_cast<std::size_t>(u) % n;
  const double w = u - std::floor(u);
  return (1.0 - w) * beta[i] + w * beta[(i + 1) % n];
}

double TFData::min_curvature_radius() const {
  double kmax = 0.0;
  for (double k : curvature) kmax = std::max(kmax, std::abs(k));
  return kmax > 0 ? 1.0 / kmax : std::numeric_limits<double>::infinity();
}

std::array<double, 4> TFData::curve_at(double th) const {
  if (radial) {
    const double ang = th / R;
    return {R * std::cos(ang), R * std::sin(ang), std::cos(ang), std::sin(ang)};
  }
  const std::size_t n = theta.size();
  const double ds = ell / n;
  double u = std::fmod(th, ell);
  if (u < 0) u += ell;
  u /= ds;
  const std::size_t i = static_cast<std::size_t>(u) % n;
  const std::size_t j = (i + 1) % n;
  const double t = u - std::floor(u);
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t, h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  const double g00 = 6 * t2 - 6 * t, g10 = 3 * t2 - 4 * t + 1, g01 = -6 * t2 + 6 * t, g11 = 3 * t2 - 2 * t;
  const double x = h00 * px[i] + h10 * ds * tx[i] + h01 * px[j] + h11 * ds * tx[j];
  const double y = h00 * py[i] + h10 * ds * ty[i] + h01 * py[j] + h11 * ds * ty[j];
  const double dx = (g00 * px[i] + g01 * px[j]) / ds + g10 * tx[i] + g11 * tx[j];
  const double dy = (g00 * py[i] + g01 * py[j]) / ds + g10 * ty[i] + g11 * ty[j];
  const double len = std::hypot(dx, dy);
  return {x, y, dy / len, -dx / len};
}

std::array<double, 2> TFData::from_fermi(double t, double th) const {
  const auto c = curve_at(th);
  return {c[0] + t * c[2], c[1] + t * c[3]};
}

std::array<double, 2> TFData::to_fermi(double y1, double y2) const {
  if (radial) {
    double ang = std::atan2(y2, y1);
    if (ang < 0) ang += 2.0 * std::numbers::pi;
    return {std::hypot(y1, y2) - R, R * ang};
  }
  const std::size_t n = theta.size();
  std::size_t best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::hypot(y1 - px[i], y2 - py[i]);
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  const double ds = ell / n;
  // stationarity of |y - gamma(theta)|: (y - gamma) . tangent = 0
  const auto g = [&](double th) {
    const auto c = curve_at(th);
    return (y1 - c[0]) * (-c[3]) + (y2 - c[1]) * c[2];
  };
  double lo = theta[best] - ds, hi = theta[best] + ds;
  for (int k = 0; k < 8 && g(lo) * g(hi) > 0; ++k) {
    lo -= ds;
    hi += ds;
  }
  if (g(lo) * g(hi) > 0) throw DomainError("to_fermi: point too far from the boundary");
  double th = root(g, lo, hi);
  const auto c = curve_at(th);
  const double t = (y1 - c[0]) * c[2] + (y2 - c[1]) * c[3];
  th = std::fmod(th, ell);
  if (th < 0) th += ell;
  return {t, th};
}

namespace {

struct Polyline {
  std::vector<double> x, y;
};

// Marching squares on f = W - lambda; returns every closed component.
std::vector<Polyline> contours(const Trap& trap, double lambda, double B, int N) {
  const double h = 2.0 * B / (N - 1);
  std::vector<double> f(static_cast<std::size_t>(N) * N);
  auto at = [&](int i, int j) -> double& { return f[static_cast<std::size_t>(j) * N + i]; };
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      double v = trap.W(-B + i * h, -B + j * h) - lambda;
      if (v == 0.0) v = 1e-300;
      at(i, j) = v;
    }
  // edge ids: horizontal (i,j)-(i+1,j) -> 2*(j*N+i), vertical (i,j)-(i,j+1) -> 2*(j*N+i)+1
  std::map<long long, std::array<double, 2>> point;
  std::map<long long, std::vector<long long>> adj;
  auto edge_point = [&](long long id) {
    if (point.count(id)) return;
    const long long base = id / 2;
    const int i = static_cast<int>(base % N), j = static_cast<int>(base / N);
    const bool vert = id % 2;
    const double f0 = at(i, j);
    const double f1 = vert ? at(i, j + 1) : at(i + 1, j);
    const double s = f0 / (f0 - f1);
    point[id] = {-B + (i + (vert ? 0.0 : s)) * h, -B + (j + (vert ? s : 0.0)) * h};
  };
  auto link = [&](long long a, long long b) {
    edge_point(a);
    edge_point(b);
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  for (int j = 0; j + 1 < N; ++j)
    for (int i = 0; i + 1 < N; ++i) {
      const double v0 = at(i, j), v1 = at(i + 1, j), v2 = at(i + 1, j + 1), v3 = at(i, j + 1);
      const int c = (v0 > 0) | ((v1 > 0) << 1) | ((v2 > 0) << 2) | ((v3 > 0) << 3);
      if (c == 0 || c == 15) continue;
      const long long bottom = 2LL * (static_cast<long long>(j) * N + i);
      const long long left = bottom + 1;
      const long long top = 2LL * (static_cast<long long>(j + 1) * N + i);
      const long long right = 2LL * (static_cast<long long>(j) * N + i + 1) + 1;
      switch (c) {
        case 1: case 14: link(left, bottom); break;
        case 2: case 13: link(bottom, right); break;
        case 3: case 12: link(left, right); break;
        case 4: case 11: link(right, top); break;
        case 6: case 9: link(bottom, top); break;
        case 7: case 8: link(left, top); break;
        case 5: case 10: {
          const bool center = 0.25 * (v0 + v1 + v2 + v3) > 0;
          if ((c == 5) == center) {
            link(left, top);
            link(bottom, right);
          } else {
            link(left, bottom);
            link(right, top);
          }
          break;
        }
        default: break;
      }
    }
  std::vector<Polyline> out;
  std::map<long long, bool> seen;
  for (const auto& [start, nb] : adj) {
    if (seen[start]) continue;
    Polyline pl;
    long long prev = -1, cur = start;
    while (true) {
      seen[cur] = true;
      pl.x.push_back(point[cur][0]);
      pl.y.push_back(point[cur][1]);
      const auto& nbr = adj[cur];
      long long next = -1;
      for (long long cand : nbr)
        if (cand != prev && !seen[cand]) {
          next = cand;
          break;
        }
      if (next < 0) break;
      prev = cur;
      cur = next;
    }
    if (pl.x.size() >= 3) out.push_back(std::move(pl));
  }
  return out;
}

void project_to_level(const Trap& trap, double lambda, double& x, double& y) {
  for (int k = 0; k < 6; ++k) {
    const double f = trap.W(x, y) - lambda;
    const auto g = trap.grad(x, y);
    const double gg = g[0] * g[0] + g[1] * g[1];
    if (gg == 0.0) return;
    x -= f * g[0] / gg;
    y -= f * g[1] / gg;
  }
}

bool segments_cross(double ax, double ay, double bx, double by, double cx, double cy, double dx, double dy) {
  const auto orient = [](double px, double py, double qx, double qy, double rx, double ry) {
    return (qx - px) * (ry - py) - (qy - py) * (rx - px);
  };
  const double o1 = orient(ax, ay, bx, by, cx, cy), o2 = orient(ax, ay, bx, by, dx, dy);
  const double o3 = orient(cx, cy, dx, dy, ax, ay), o4 = orient(cx, cy, dx, dy, bx, by);
  return (o1 * o2 < 0) && (o3 * o4 < 0);
}

TFData radial_boundary(const Trap& trap, double lambda, int n_theta) {
  const auto iv = positive_intervals(trap, lambda);
  if (iv.size() != 1 || iv[0][0] != 0.0) {
    throw TopologyError("boundary_and_beta: level set is not a single circle around the origin");
  }
  TFData tf;
  tf.trap = trap;
  tf.lambda = lambda;
  tf.radial = true;
  tf.R = iv[0][1];
  const double b3 = trap.dW_r(tf.R);
  if (!(b3 > 0.0)) throw DomainError("boundary_and_beta: dW/dn <= 0 on the boundary");
  tf.ell = 2.0 * std::numbers::pi * tf.R;
  for (int i = 0; i < n_theta; ++i) {
    const double th = tf.ell * i / n_theta;
    const double ang = th / tf.R;
    tf.theta.push_back(th);
    tf.px.push_back(tf.R * std::cos(ang));
    tf.py.push_back(tf.R * std::sin(ang));
    tf.nx.push_back(std::cos(ang));
    tf.ny.push_back(std::sin(ang));
    tf.tx.push_back(-std::sin(ang));
    tf.ty.push_back(std::cos(ang));
    tf.beta.push_back(std::cbrt(b3));
    tf.curvature.push_back(1.0 / tf.R);
  }
  return tf;
}

TFData contour_boundary(const Trap& trap, double lambda, int n_theta) {
  double extent = 0.0;
  for (int k = 0; k < 64; ++k) extent = std::max(extent, ray_radius(trap, lambda, 2 * std::numbers::pi * k / 64));
  const double B = 1.25 * extent;
  auto comps = contours(trap, lambda, B, 1024);
  if (comps.size() != 1) {
    throw TopologyError("boundary_and_beta: level set has " + std::to_string(comps.size()) +
                        " components; only simply connected domains are supported");
  }
  Polyline pl = std::move(comps[0]);
  const std::size_t m = pl.x.size();
  for (std::size_t i = 0; i < m; ++i) project_to_level(trap, lambda, pl.x[i], pl.y[i]);
  double area = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = (i + 1) % m;
    area += pl.x[i] * pl.y[j] - pl.x[j] * pl.y[i];
  }
  if (area < 0) {
    std::reverse(pl.x.begin(), pl.x.end());
    std::reverse(pl.y.begin(), pl.y.end());
  }
  std::vector<double> s(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = (i + 1) % m;
    s[i + 1] = s[i] + std::hypot(pl.x[j] - pl.x[i], pl.y[j] - pl.y[i]);
  }
  TFData tf;
  tf.trap = trap;
  tf.lambda = lambda;
  tf.radial = false;
  tf.ell = s[m];
  const double ds = tf.ell / n_theta;
  std::size_t seg = 0;
  for (int k = 0; k < n_theta; ++k) {
    const double target = k * ds;
    while (s[seg + 1] < target) ++seg;
    const double w = (target - s[seg]) / (s[seg + 1] - s[seg]);
    const std::size_t j = (seg + 1) % m;
    double x = (1 - w) * pl.x[seg] + w * pl.x[j];
    double y = (1 - w) * pl.y[seg] + w * pl.y[j];
    project_to_level(trap, lambda, x, y);
    tf.theta.push_back(target);
    tf.px.push_back(x);
    tf.py.push_back(y);
  }
  const int n = n_theta;
  tf.nx.resize(n);
  tf.ny.resize(n);
  tf.tx.resize(n);
  tf.ty.resize(n);
  tf.beta.resize(n);
  tf.curvature.resize(n);
  for (int i = 0; i < n; ++i) {
    // five-point least-squares quadratic in arclength
    double sx1 = 0, sy1 = 0, sx2 = 0, sy2 = 0, sx0 = 0, sy0 = 0;
    for (int k = -2; k <= 2; ++k) {
      const int idx = ((i + k) % n + n) % n;
      sx0 += tf.px[idx];
      sy0 += tf.py[idx];
      sx1 += k * tf.px[idx];
      sy1 += k * tf.py[idx];
      sx2 += k * k * tf.px[idx];
      sy2 += k * k * tf.py[idx];
    }
    const double xp = sx1 / (10.0 * ds), yp = sy1 / (10.0 * ds);
    const double xpp = 2.0 * (sx2 - 2.0 * sx0) / (14.0 * ds * ds);
    const double ypp = 2.0 * (sy2 - 2.0 * sy0) / (14.0 * ds * ds);
    const double sp = std::hypot(xp, yp);
    tf.tx[i] = xp / sp;
    tf.ty[i] = yp / sp;
    tf.nx[i] = tf.ty[i];
    tf.ny[i] = -tf.tx[i];
    tf.curvature[i] = (xp * ypp - yp * xpp) / (sp * sp * sp);
    const auto g = trap.grad(tf.px[i], tf.py[i]);
    const double b3 = g[0] * tf.nx[i] + g[1] * tf.ny[i];
    if (!(b3 > 0.0)) throw DomainError("boundary_and_beta: dW/dn <= 0 on the boundary");
    tf.beta[i] = std::cbrt(b3);
  }
  // closed-curve checks: winding about the centroid and no crossings
  double cx = 0, cy = 0;
  for (int i = 0; i < n; ++i) {
    cx += tf.px[i] / n;
    cy += tf.py[i] / n;
  }
  double wind = 0.0;
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    wind += std::atan2((tf.px[i] - cx) * (tf.py[j] - cy) - (tf.py[i] - cy) * (tf.px[j] - cx),
                       (tf.px[i] - cx) * (tf.px[j] - cx) + (tf.py[i] - cy) * (tf.py[j] - cy));
  }
  if (std::abs(wind / (2 * std::numbers::pi) - 1.0) > 1e-6) {
    throw TopologyError("boundary_and_beta: boundary does not wind once around its centroid");
  }
  if (n <= 4096) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;
        const int i1 = (i + 1) % n, j1 = (j + 1) % n;
        if (segments_cross(tf.px[i], tf.py[i], tf.px[i1], tf.py[i1], tf.px[j], tf.py[j], tf.px[j1], tf.py[j1])) {
          throw TopologyError("boundary_and_beta: boundary polyline self-intersects");
        }
      }
  }
  return tf;
}

}  // namespace

TFData boundary_and_beta(const Trap& trap, double lambda, int n_theta, BoundaryMethod method) {
  if (!(lambda > trap.inf_W())) throw DomainError("boundary_and_beta: lambda must exceed inf W");
  if (n_theta < 8) throw DomainError("boundary_and_beta: need n_theta >= 8");
  if (trap.radial()) {
    // annular domains are rejected before any contouring
    auto tf = radial_boundary(trap, lambda, n_theta);
    if (method == BoundaryMethod::Contour) tf = contour_boundary(trap, lambda, n_theta);
    tf.mass = mass(trap, lambda);
    return tf;
  }
  auto tf = contour_boundary(trap, lambda, n_theta);
  tf.mass = mass(trap, lambda);
  return tf;
}

std::function<double(double, double)> tf_density(const TFData& tf) {
  return [tf](double y1, double y2) { return tf.density(y1, y2); };
}

}  // namespace tfc::trap
