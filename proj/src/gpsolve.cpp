#include "tfc/gpsolve.hpp"

#include <fftw3.h>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <mutex>
#include <numbers>

#include "tfc/error.hpp"
#include "tfc/numerics.hpp"
#include "tfc/painleve.hpp"

namespace tfc::gp {

namespace {

constexpr double kPi = std::numbers::pi;

const painleve::ProfileSolution& hm_profile() {
  static const painleve::ProfileSolution sol = painleve::solve_full_line(2.0, -30.0, 15.0, 4000);
  return sol;
}

// 4th-order central stencils in s.
constexpr double kD1[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
constexpr double kD2[5] = {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};

// Maps stencil index j to an unknown index with a sign: even about 0, odd about n-1.
struct Fold {
  int idx;
  double sign;
};
Fold fold(int j, int n) {
  if (j < 0) return {-j, 1.0};
  if (j > n - 1) return {2 * (n - 1) - j, -1.0};
  return {j, 1.0};
}

struct RadialGrid {
  double hs;
  std::vector<double> r, r_s, r_ss, weight;
};

RadialGrid make_grid(double R, double r_max, double epsilon, int n, double band_fraction) {
  const double e = std::pow(epsilon, 2.0 / 3.0);
  const double w = 2.0 * e;
  const double q = std::max(band_fraction, 300.0 / (n - 1));
  const double A = std::max(0.0, (q * r_max - 10.0 * e) / (1.974 * w - 2.0 * q * w));
  const auto G = [&](double x) { return x + A * w * (std::tanh((x - R) / w) + std::tanh((x + R) / w)); };
  const auto sech2 = [](double u) {
    const double c = std::cosh(u);
    return 1.0 / (c * c);
  };
  const auto g = [&](double x) { return 1.0 + A * (sech2((x - R) / w) + sech2((x + R) / w)); };
  const auto dg = [&](double x) {
    const double u1 = (x - R) / w, u2 = (x + R) / w;
    return -2.0 * A / w * (sech2(u1) * std::tanh(u1) + sech2(u2) * std::tanh(u2));
  };
  const double Gt = G(r_max);
  RadialGrid grid;
  grid.hs = 1.0 / (n - 1);
  grid.r.resize(n);
  grid.r_s.resize(n);
  grid.r_ss.resize(n);
  for (int i = 0; i < n; ++i) {
    double x;
    if (i == 0) {
      x = 0.0;
    } else if (i == n - 1) {
      x = r_max;
    } else {
      const double target = Gt * i * grid.hs;
      std::uintmax_t it = 200;
      const auto br = boost::math::tools::toms748_solve([&](double y) { return G(y) - target; }, 0.0, r_max,
                                                        boost::math::tools::eps_tolerance<double>(52), it);
      x = 0.5 * (br.first + br.second);
    }
    grid.r[i] = x;
    grid.r_s[i] = Gt / g(x);
    grid.r_ss[i] = -dg(x) * grid.r_s[i] * grid.r_s[i] / g(x);
  }
  const auto simpson = num::simpson_weights(n, grid.hs);
  grid.weight.resize(n);
  for (int i = 0; i < n; ++i) grid.weight[i] = 2.0 * kPi * grid.r[i] * grid.r_s[i] * simpson[i];
  int band = 0;
  for (double x : grid.r)
    if (std::abs(x - R) <= 5.0 * e) ++band;
  if (band < 200) throw GridError("solve_radial: fewer than 200 nodes within 5 eps^{2/3} of R");
  return grid;
}

// Coefficients of eta_r, eta_rr and the radial Laplacian at node i over the 5-point stencil.
struct Stencil {
  double d1[5], d2[5], lap[5];
};
Stencil stencil(const RadialGrid& g, int i) {
  Stencil st{};
  const double h = g.hs, rs = g.r_s[i], rss = g.r_ss[i];
  for (int k = 0; k < 5; ++k) {
    const double a = kD1[k] / h, b = kD2[k] / (h * h);
    st.d1[k] = a / rs;
    st.d2[k] = (b - a / rs * rss) / (rs * rs);
    st.lap[k] = (i == 0) ? 2.0 * b / (rs * rs) : st.d2[k] + st.d1[k] / g.r[i];
  }
  return st;
}

void apply(const RadialGrid& g, const std::vector<double>& eta, std::vector<double>& d1, std::vector<double>& d2,
           std::vector<double>& lap) {
  const int n = static_cast<int>(g.r.size());
  d1.assign(n, 0.0);
  d2.assign(n, 0.0);
  lap.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const Stencil st = stencil(g, i);
    for (int k = 0; k < 5; ++k) {
      const Fold f = fold(i + k - 2, n);
      const double v = f.sign * eta[f.idx];
      d1[i] += st.d1[k] * v;
      d2[i] += st.d2[k] * v;
      lap[i] += st.lap[k] * v;
    }
  }
  d1[0] = 0.0;
}

struct NewtonResult {
  bool ok = false;
  int iters = 0;
  double merit = 0.0;
};

NewtonResult newton(const RadialGrid& g, const std::vector<double>& W, double epsilon, std::vector<double>& eta,
                    double& lambda, const RadialOptions& opt) {
  const int n = static_cast<int>(g.r.size());
  const int m = n - 1;  // eta[n-1] = 0
  const double e2 = epsilon * epsilon;
  std::vector<Stencil> st(m);
  for (int i = 0; i < m; ++i) st[i] = stencil(g, i);

  const auto residuals = [&](const std::vector<double>& u, double lam, Eigen::VectorXd& F) {
    F.resize(m + 1);
    double mass = 0.0;
    for (int i = 0; i < m; ++i) {
      double lap = 0.0;
      for (int k = 0; k < 5; ++k) {
        const Fold f = fold(i + k - 2, n);
        lap += st[i].lap[k] * f.sign * u[f.idx];
      }
      F[i] = e2 * lap + (lam - W[i]) * u[i] - u[i] * u[i] * u[i];
      mass += g.weight[i] * u[i] * u[i];
    }
    F[m] = mass - 1.0;
    return F.lpNorm<Eigen::Infinity>();
  };

  Eigen::VectorXd F;
  double merit = residuals(eta, lambda, F);
  NewtonResult res;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  bool analyzed = false;
  for (int it = 0; it < opt.max_iter; ++it) {
    res.iters = it;
    if (merit < 1e-3 * opt.tol) break;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(7 * m + 1);
    for (int i = 0; i < m; ++i) {
      for (int k = 0; k < 5; ++k) {
        const Fold f = fold(i + k - 2, n);
        if (f.idx >= m) continue;
        trip.emplace_back(i, f.idx, e2 * st[i].lap[k] * f.sign);
      }
      trip.emplace_back(i, i, lambda - W[i] - 3.0 * eta[i] * eta[i]);
      trip.emplace_back(i, m, eta[i]);
      trip.emplace_back(m, i, 2.0 * g.weight[i] * eta[i]);
    }
    Eigen::SparseMatrix<double> J(m + 1, m + 1);
    J.setFromTriplets(trip.begin(), trip.end());
    if (!analyzed) {
      lu.analyzePattern(J);
      analyzed = true;
    }
    lu.factorize(J);
    if (lu.info() != Eigen::Success) return res;
    const Eigen::VectorXd dx = lu.solve(-F);
    double t = 1.0;
    bool accepted = false;
    std::vector<double> trial(n, 0.0);
    Eigen::VectorXd Ft;
    for (int b = 0; b < 40; ++b, t *= 0.5) {
      bool positive = true;
      for (int i = 0; i < m; ++i) {
        trial[i] = eta[i] + t * dx[i];
        if (!(trial[i] > 0.0)) positive = false;
      }
      if (!positive) continue;
      const double lt = lambda + t * dx[m];
      const double mt = residuals(trial, lt, Ft);
      if (mt < merit || mt < 1e-3 * opt.tol) {
        eta = trial;
        lambda = lt;
        merit = mt;
        F = Ft;
        accepted = true;
        break;
      }
    }
    res.iters = it + 1;
    if (!accepted) break;
  }
  res.merit = merit;
  res.ok = merit <= opt.tol;
  return res;
}

std::vector<double> initial_guess(const trap::Trap& trap, const RadialGrid& g, double epsilon, double lambda0,
                                  double R) {
  const auto& hm = hm_profile();
  const double e = std::pow(epsilon, 2.0 / 3.0);
  const double beta = std::cbrt(trap.dW_r(R));
  std::vector<double> eta(g.r.size(), 0.0);
  for (std::size_t i = 0; i + 1 < g.r.size(); ++i) {
    const double r = g.r[i];
    const double tf = std::sqrt(std::max(lambda0 - trap.W_r(r), 0.0));
    const double inner = std::cbrt(epsilon) * beta * painleve::evaluate(hm, beta * (r - R) / e).v;
    const double rho = num::smoothstep5((r - (R - 3.0 * e)) / (3.0 * e)).v;
    eta[i] = std::max((1.0 - rho) * tf + rho * inner, 1e-300);
  }
  return eta;
}

// eta from a coarser-eps state onto a new grid.
std::vector<double> transfer(const GroundState& from, const RadialGrid& g) {
  std::vector<double> eta(g.r.size(), 0.0);
  for (std::size_t i = 0; i + 1 < g.r.size(); ++i) eta[i] = std::max(eval_radial(from, g.r[i]).v, 1e-300);
  return eta;
}

double tf_radius(const trap::Trap& trap, double lambda0) { return trap::boundary_and_beta(trap, lambda0, 16).R; }

GroundState finish_radial(const trap::Trap& trap, double epsilon, const RadialGrid& g, std::vector<double> eta,
                          double lambda, double lambda0, int iters) {
  GroundState gs;
  gs.epsilon = epsilon;
  gs.trap = trap;
  gs.radial = true;
  gs.hs = g.hs;
  gs.r = g.r;
  gs.r_s = g.r_s;
  gs.r_ss = g.r_ss;
  gs.weight = g.weight;
  eta.back() = 0.0;
  gs.eta = std::move(eta);
  std::vector<double> lap;
  apply(g, gs.eta, gs.eta_r, gs.eta_rr, lap);
  gs.lambda = lambda;
  gs.lambda0 = lambda0;
  gs.iterations = iters;
  double mass = 0, kin = 0, pot = 0, quart = 0;
  for (std::size_t i = 0; i < gs.r.size(); ++i) {
    const double u2 = gs.eta[i] * gs.eta[i];
    mass += gs.weight[i] * u2;
    kin += gs.weight[i] * gs.eta_r[i] * gs.eta_r[i];
    pot += gs.weight[i] * trap.W_r(gs.r[i]) * u2;
    quart += gs.weight[i] * u2 * u2;
  }
  gs.mass = mass;
  gs.lambda_identity = epsilon * epsilon * kin + pot + quart;
  gs.residual = residual(gs);
  trap::TFData tf;
  tf.trap = trap;
  tf.lambda = lambda0;
  gs.energy = energy(gs, tf);
  return gs;
}

}  // namespace

double default_r_max(const trap::Trap& trap) {
  const double l0 = trap::compute_lambda0(trap);
  const double R = tf_radius(trap, l0);
  double hi = trap.support_bound(l0 + 1.0);
  // outermost radius with W = lambda0 + 1
  const auto f = [&](double r) { return trap.W_r(r) - l0 - 1.0; };
  double lo = R;
  if (f(lo) < 0) {
    std::uintmax_t it = 200;
    const auto br =
        boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(52), it);
    hi = 0.5 * (br.first + br.second);
  } else {
    hi = R;
  }
  return std::max(1.5 * R, hi);
}

GroundState solve_radial(const trap::Trap& trap, double epsilon, double r_max, int n, const RadialOptions& opt) {
  if (!trap.radial()) throw DomainError("solve_radial: trap is not radial");
  if (!(epsilon >= 1e-3 && epsilon <= 0.5)) throw DomainError("solve_radial: epsilon must lie in [1e-3, 0.5]");
  if (n < 2000) throw DomainError("solve_radial: need n >= 2000");
  if (n % 2 == 0) ++n;  // Simpson in s
  const double lambda0 = trap::compute_lambda0(trap);
  const double R = tf_radius(trap, lambda0);
  if (r_max <= 0.0) r_max = default_r_max(trap);
  if (r_max < 1.5 * R * (1.0 - 1e-12)) throw DomainError("solve_radial: r_max must be >= 1.5 R");
  const RadialGrid g = make_grid(R, r_max, epsilon, n, opt.band_fraction);
  std::vector<double> W(n);
  for (int i = 0; i < n; ++i) W[i] = trap.W_r(g.r[i]);

  std::vector<double> eta = initial_guess(trap, g, epsilon, lambda0, R);
  double lambda = lambda0;
  NewtonResult nr = newton(g, W, epsilon, eta, lambda, opt);
  if (nr.ok) return finish_radial(trap, epsilon, g, std::move(eta), lambda, lambda0, nr.iters);

  // eps continuation from a coarse, easy solve
  double last_merit = nr.merit;
  for (int restart = 0; restart < 3; ++restart) {
    std::vector<double> ladder;
    for (double e = std::min(0.5, 4.0 * epsilon * (restart + 1)); e > epsilon * 1.0001; e *= 0.7 - 0.1 * restart)
      ladder.push_back(e);
    ladder.push_back(epsilon);
    GroundState prev;
    bool ok = true;
    int total = 0;
    for (std::size_t k = 0; k < ladder.size(); ++k) {
      const RadialGrid gk = make_grid(R, r_max, ladder[k], n, opt.band_fraction);
      std::vector<double> Wk(n);
      for (int i = 0; i < n; ++i) Wk[i] = trap.W_r(gk.r[i]);
      std::vector<double> ek = k == 0 ? initial_guess(trap, gk, ladder[k], lambda0, R) : transfer(prev, gk);
      double lk = k == 0 ? lambda0 : prev.lambda;
      const NewtonResult rk = newton(gk, Wk, ladder[k], ek, lk, opt);
      total += rk.iters;
      last_merit = rk.merit;
      if (!rk.ok) {
        ok = false;
        break;
      }
      prev = finish_radial(trap, ladder[k], gk, std::move(ek), lk, lambda0, total);
    }
    if (ok) {
      prev.continued = true;
      return prev;
    }
  }
  throw SolverError("solve_radial: Newton failed to converge (eps = " + std::to_string(epsilon) + ")", last_merit);
}

Value eval_radial(const GroundState& gs, double r) {
  if (!gs.radial) throw DomainError("eval_radial: state is not radial");
  r = std::abs(r);
  if (r >= gs.r.back()) return {0.0, 0.0, 0.0};
  const std::size_t i = num::locate(gs.r, r);
  const auto h = num::quintic_hermite(gs.r[i], gs.r[i + 1], gs.eta[i], gs.eta_r[i], gs.eta_rr[i], gs.eta[i + 1],
                                      gs.eta_r[i + 1], gs.eta_rr[i + 1], r);
  return {h.f, h.df, h.d2f};
}

double grid_a_plus_squared(const GroundState& gs, double lambda0) {
  double s = 0.0;
  if (gs.radial) {
    for (std::size_t i = 0; i < gs.r.size(); ++i) {
      const double a = std::max(lambda0 - gs.trap.W_r(gs.r[i]), 0.0);
      s += gs.weight[i] * a * a;
    }
    return s;
  }
  const double h = gs.axis[1] - gs.axis[0];
  for (int j = 0; j < gs.n2; ++j)
    for (int i = 0; i < gs.n2; ++i) {
      const double a = std::max(lambda0 - gs.trap.W(gs.axis[i], gs.axis[j]), 0.0);
      s += a * a;
    }
  return s * h * h;
}

namespace {

std::mutex fftw_mutex;

// Sine-series Laplacian helper on n^2 interior nodes of [-B, B]^2.
class Sine2D {
 public:
  Sine2D(int n, double B) : n_(n), B_(B), buf_(static_cast<std::size_t>(n) * n), spec_(buf_.size()) {
    std::lock_guard<std::mutex> lock(fftw_mutex);
    fwd_ = fftw_plan_r2r_2d(n, n, buf_.data(), spec_.data(), FFTW_RODFT00, FFTW_RODFT00, FFTW_ESTIMATE);
    bwd_ = fftw_plan_r2r_2d(n, n, spec_.data(), buf_.data(), FFTW_RODFT00, FFTW_RODFT00, FFTW_ESTIMATE);
    k2_.resize(n);
    for (int j = 0; j < n; ++j) {
      const double k = (j + 1) * kPi / (2.0 * B);
      k2_[j] = k * k;
    }
  }
  ~Sine2D() {
    std::lock_guard<std::mutex> lock(fftw_mutex);
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
  }
  Sine2D(const Sine2D&) = delete;
  Sine2D& operator=(const Sine2D&) = delete;

  // out = inverse of (diag(shift) + c kappa^2) applied to in; c = 0 for the identity.
  void solve(const std::vector<double>& in, double shift, double c, std::vector<double>& out) {
    std::copy(in.begin(), in.end(), buf_.begin());
    fftw_execute(fwd_);
    const double norm = 1.0 / (4.0 * (n_ + 1.0) * (n_ + 1.0));
    for (int j = 0; j < n_; ++j)
      for (int i = 0; i < n_; ++i) spec_[idx(i, j)] *= norm / (shift + c * (k2_[i] + k2_[j]));
    fftw_execute(bwd_);
    out = buf_;
  }
  // -Laplacian of in, and int |grad|^2.
  double neg_laplacian(const std::vector<double>& in, std::vector<double>& out) {
    std::copy(in.begin(), in.end(), buf_.begin());
    fftw_execute(fwd_);
    const double norm = 1.0 / (4.0 * (n_ + 1.0) * (n_ + 1.0));
    double grad2 = 0.0;
    for (int j = 0; j < n_; ++j)
      for (int i = 0; i < n_; ++i) {
        const double c = spec_[idx(i, j)] / ((n_ + 1.0) * (n_ + 1.0));
        grad2 += (k2_[i] + k2_[j]) * c * c;
        spec_[idx(i, j)] *= norm * (k2_[i] + k2_[j]);
      }
    fftw_execute(bwd_);
    out = buf_;
    return grad2 * B_ * B_;
  }

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * n_ + i; }
  int n_;
  double B_;
  std::vector<double> buf_, spec_, k2_;
  fftw_plan fwd_, bwd_;
};

struct FlowEval {
  double energy, lambda, residual, grad2;
};

FlowEval evaluate_flow(Sine2D& sp, const std::vector<double>& eta, const std::vector<double>& W, double e2,
                       double h2) {
  std::vector<double> lap;
  const double grad2 = sp.neg_laplacian(eta, lap);
  double pot = 0, quart = 0;
  for (std::size_t k = 0; k < eta.size(); ++k) {
    const double u2 = eta[k] * eta[k];
    pot += W[k] * u2;
    quart += u2 * u2;
  }
  pot *= h2;
  quart *= h2;
  FlowEval ev;
  ev.grad2 = grad2;
  ev.lambda = e2 * grad2 + pot + quart;
  ev.energy = 0.5 * grad2 + (0.25 * quart + 0.5 * pot) / e2;
  double r2 = 0.0;
  for (std::size_t k = 0; k < eta.size(); ++k) {
    const double rk = e2 * lap[k] + (W[k] + eta[k] * eta[k] - ev.lambda) * eta[k];
    r2 += rk * rk;
  }
  ev.residual = std::sqrt(r2 * h2);
  return ev;
}

void normalize(std::vector<double>& eta, double h2) {
  double m = 0.0;
  for (double v : eta) m += v * v;
  const double s = 1.0 / std::sqrt(m * h2);
  for (double& v : eta) v *= s;
}

}  // namespace

GroundState solve_2d(const trap::Trap& trap, double epsilon, double box_half, int n, const FlowOptions& opt) {
  if (!(epsilon >= 5e-3 && epsilon <= 0.5)) throw DomainError("solve_2d: epsilon must lie in [5e-3, 0.5]");
  if (n < 256) throw DomainError("solve_2d: need n >= 256 intervals per axis");
  const double lambda0 = trap::compute_lambda0(trap);
  const double extent = trap.support_bound(lambda0);
  if (box_half < 1.5 * extent * (1.0 - 1e-6)) throw DomainError("solve_2d: box_half must be >= 1.5 x TF extent");
  // n intervals per axis, n - 1 interior nodes: sine transforms of length n
  const double h = 2.0 * box_half / n;
  n -= 1;
  const double h2 = h * h;
  const double e2 = epsilon * epsilon;
  GroundState gs;
  gs.epsilon = epsilon;
  gs.trap = trap;
  gs.radial = false;
  gs.box = box_half;
  gs.n2 = n;
  gs.lambda0 = lambda0;
  gs.axis.resize(n);
  for (int i = 0; i < n; ++i) gs.axis[i] = -box_half + (i + 1) * h;
  const std::size_t N = static_cast<std::size_t>(n) * n;
  std::vector<double> W(N), eta(N);
  const double e43 = std::pow(epsilon, 4.0 / 3.0);
  double wmax = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const std::size_t k = static_cast<std::size_t>(j) * n + i;
      W[k] = trap.W(gs.axis[i], gs.axis[j]);
      wmax = std::max(wmax, W[k]);
      const double a = lambda0 - W[k];
      eta[k] = std::sqrt(0.5 * (a + std::sqrt(a * a + e43)));
    }
  normalize(eta, h2);
  Sine2D sp(n, box_half);
  FlowEval cur = evaluate_flow(sp, eta, W, e2, h2);
  double dt = opt.dt;
  std::vector<double> rhs(N), next;
  int step = 0;
  for (; step < opt.max_steps; ++step) {
    double bmax = 0.0;
    for (std::size_t k = 0; k < N; ++k) bmax = std::max(bmax, W[k] + eta[k] * eta[k]);
    const double alpha = 0.5 * bmax;
    // explicit multiplier keeps fixed points consistent with renormalization
    for (std::size_t k = 0; k < N; ++k) rhs[k] = eta[k] / dt - (W[k] + eta[k] * eta[k] - alpha - cur.lambda) * eta[k];
    sp.solve(rhs, 1.0 / dt + alpha, e2, next);
    normalize(next, h2);
    const FlowEval ev = evaluate_flow(sp, next, W, e2, h2);
    if (ev.energy > cur.energy * (1.0 + 1e-9)) {
      dt *= 0.5;
      if (dt < 1e-10) throw SolverError("solve_2d: step size collapsed", cur.residual);
      continue;
    }
    const double rel = std::abs(ev.energy - cur.energy) / std::abs(ev.energy);
    eta.swap(next);
    cur = ev;
    if (rel <= opt.energy_tol && cur.residual <= opt.residual_tol) break;
  }
  if (step >= opt.max_steps) throw SolverError("solve_2d: no convergence within max_steps", cur.residual);
  for (double& v : eta) v = std::abs(v);
  gs.eta = std::move(eta);
  gs.iterations = step + 1;
  gs.lambda = cur.lambda;
  gs.lambda_identity = cur.lambda;
  gs.residual = cur.residual;
  double m = 0.0;
  for (double v : gs.eta) m += v * v;
  gs.mass = m * h2;
  trap::TFData tf;
  tf.trap = trap;
  tf.lambda = lambda0;
  gs.energy = energy(gs, tf);
  return gs;
}

EnergyParts energy(const GroundState& gs, const trap::TFData& tf) {
  const double e2 = gs.epsilon * gs.epsilon;
  const double l0 = tf.lambda;
  double total = 0, g1 = 0;
  const double ap2 = grid_a_plus_squared(gs, l0);
  const auto local = [&](double grad2, double u, double W, double& t, double& s) {
    const double u2 = u * u;
    const double A = l0 - W;
    const double Ap = std::max(A, 0.0), Am = std::max(-A, 0.0);
    t = 0.5 * grad2 + 0.25 * u2 * u2 / e2 + 0.5 * W * u2 / e2;
    s = 0.5 * grad2 + 0.25 * (u2 - Ap) * (u2 - Ap) / e2 + 0.5 * Am * u2 / e2;
  };
  if (gs.radial) {
    for (std::size_t i = 0; i < gs.r.size(); ++i) {
      double t, s;
      local(gs.eta_r[i] * gs.eta_r[i], gs.eta[i], gs.trap.W_r(gs.r[i]), t, s);
      total += gs.weight[i] * t;
      g1 += gs.weight[i] * s;
    }
  } else {
    Sine2D sp(gs.n2, gs.box);
    std::vector<double> lap;
    const double grad2 = sp.neg_laplacian(gs.eta, lap);
    const double h = gs.axis[1] - gs.axis[0];
    double tt = 0, ss = 0;
    for (int j = 0; j < gs.n2; ++j)
      for (int i = 0; i < gs.n2; ++i) {
        double t, s;
        local(0.0, gs.at(i, j), gs.trap.W(gs.axis[i], gs.axis[j]), t, s);
        tt += t;
        ss += s;
      }
    total = 0.5 * grad2 + tt * h * h;
    g1 = 0.5 * grad2 + ss * h * h;
  }
  EnergyParts out;
  out.total = total;
  out.g1 = g1;
  out.constant = (l0 - 0.5 * ap2) / (2.0 * e2);
  return out;
}

double residual(const GroundState& gs) {
  const double e2 = gs.epsilon * gs.epsilon;
  if (gs.radial) {
    RadialGrid g{gs.hs, gs.r, gs.r_s, gs.r_ss, gs.weight};
    std::vector<double> d1, d2, lap;
    apply(g, gs.eta, d1, d2, lap);
    double sup = 0.0;
    for (std::size_t i = 0; i + 1 < gs.r.size(); ++i) {
      const double u = gs.eta[i];
      sup = std::max(sup, std::abs(e2 * lap[i] + (gs.lambda - gs.trap.W_r(gs.r[i])) * u - u * u * u));
    }
    return sup;
  }
  Sine2D sp(gs.n2, gs.box);
  const double h = gs.axis[1] - gs.axis[0];
  std::vector<double> W(gs.eta.size());
  for (int j = 0; j < gs.n2; ++j)
    for (int i = 0; i < gs.n2; ++i) W[static_cast<std::size_t>(j) * gs.n2 + i] = gs.trap.W(gs.axis[i], gs.axis[j]);
  return evaluate_flow(sp, gs.eta, W, e2, h * h).residual;
}

XiF xi_f(const GroundState& gs) {
  if (!gs.radial) throw DomainError("xi_f: state is not radial");
  const std::size_t n = gs.r.size();
  std::vector<double> integrand(n);
  for (std::size_t i = 0; i < n; ++i) integrand[i] = gs.r[i] * gs.r_s[i] * gs.eta[i] * gs.eta[i];
  XiF out;
  out.r = gs.r;
  out.xi = num::cumulative_simpson_backward(integrand, gs.hs);
  out.f.assign(n, 0.0);
  out.valid.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const double u2 = gs.eta[i] * gs.eta[i];
    if (u2 > 1e-30) {
      out.f[i] = out.xi[i] / u2;
      out.valid[i] = true;
    }
  }
  return out;
}

}  // namespace tfc::gp
