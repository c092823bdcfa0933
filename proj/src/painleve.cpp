#include "tfc/painleve.hpp"

#include <lapacke.h>

#include <Eigen/SparseLU>
#include <Eigen/SparseCore>
#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>

#include "tfc/error.hpp"
#include "tfc/numerics.hpp"
#include "tfc/specfun.hpp"

namespace tfc::painleve {
namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

bool mirrored(Problem p) { return p != Problem::FullLine; }

double f_of(double p, bool mirror, double x, double v) {
  return v * (std::pow(std::abs(v), p) + (mirror ? -x : x));
}

double df_of(double p, bool mirror, double x, double v) {
  return (p + 1.0) * std::pow(std::abs(v), p) + (mirror ? -x : x);
}

// Error estimate of the two-term algebraic tail: its ODE residual over the
// local linearised restoring rate p*X.
double tail_defect(double p, double X) {
  const double a = (1.0 - p) / (p * p * p);
  const double q = 1.0 / p;
  const double va = std::pow(X, q) + a * std::pow(X, q - 3.0);
  const double vxx = q * (q - 1.0) * std::pow(X, q - 2.0) +
                     a * (q - 3.0) * (q - 4.0) * std::pow(X, q - 5.0);
  const double bracket = X * std::expm1(p * std::log1p(a * std::pow(X, -3.0)));
  return std::abs(vxx - va * bracket) / (p * X);
}

struct Setup {
  double p;
  Problem problem;
  std::vector<double> x;
  double h;
};

// Numerov rows plus problem-specific boundary rows; returns F (interior rows scaled by 1/h^2).
Eigen::VectorXd residual(const Setup& s, const Eigen::VectorXd& v, double airy_ratio) {
  const int n = static_cast<int>(s.x.size());
  const bool mir = mirrored(s.problem);
  const double h2 = s.h * s.h;
  Eigen::VectorXd F(n);
  std::vector<double> f(n);
  for (int i = 0; i < n; ++i) f[i] = f_of(s.p, mir, s.x[i], v[i]);
  for (int i = 1; i < n - 1; ++i) {
    F[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / h2 - (f[i + 1] + 10.0 * f[i] + f[i - 1]) / 12.0;
  }
  switch (s.problem) {
    case Problem::FullLine:
      F[0] = v[0] - algebraic_tail(s.p, -s.x[0]).value;
      F[n - 1] = v[n - 1] - airy_ratio * v[n - 2];
      break;
    case Problem::HalfDirichlet:
      F[0] = v[0];
      F[n - 1] = v[n - 1] - algebraic_tail(s.p, s.x[n - 1]).value;
      break;
    case Problem::HalfNeumann:
      F[0] = (v[1] - v[0]) / s.h -
             s.h * (97.0 * f[0] + 114.0 * f[1] - 39.0 * f[2] + 8.0 * f[3]) / 360.0;
      F[n - 1] = v[n - 1] - algebraic_tail(s.p, s.x[n - 1]).value;
      break;
  }
  return F;
}

SpMat jacobian(const Setup& s, const Eigen::VectorXd& v, double airy_ratio) {
  const int n = static_cast<int>(s.x.size());
  const bool mir = mirrored(s.problem);
  const double h2 = s.h * s.h;
  std::vector<double> df(n);
  for (int i = 0; i < n; ++i) df[i] = df_of(s.p, mir, s.x[i], v[i]);
  std::vector<Triplet> t;
  t.reserve(3 * n + 8);
  for (int i = 1; i < n - 1; ++i) {
    t.emplace_back(i, i - 1, 1.0 / h2 - df[i - 1] / 12.0);
    t.emplace_back(i, i, -2.0 / h2 - 10.0 * df[i] / 12.0);
    t.emplace_back(i, i + 1, 1.0 / h2 - df[i + 1] / 12.0);
  }
  if (s.problem == Problem::HalfNeumann) {
    const double c = s.h / 360.0;
    t.emplace_back(0, 0, -1.0 / s.h - c * 97.0 * df[0]);
    t.emplace_back(0, 1, 1.0 / s.h - c * 114.0 * df[1]);
    t.emplace_back(0, 2, c * 39.0 * df[2]);
    t.emplace_back(0, 3, -c * 8.0 * df[3]);
  } else {
    t.emplace_back(0, 0, 1.0);
  }
  t.emplace_back(n - 1, n - 1, 1.0);
  if (s.problem == Problem::FullLine) t.emplace_back(n - 1, n - 2, -airy_ratio);
  SpMat J(n, n);
  J.setFromTriplets(t.begin(), t.end());
  return J;
}

double initial_guess(const Setup& s, double x) {
  const double q = 1.0 / s.p;
  switch (s.problem) {
    case Problem::FullLine: {
      // (-x)^{1/p} blended to zero over [-1, 1] with a cubic
      const double u = std::clamp((x + 1.0) / 2.0, 0.0, 1.0);
      const double w = u * u * (3.0 - 2.0 * u);
      return (1.0 - w) * std::pow(std::max(-x, 0.0), q);
    }
    case Problem::HalfDirichlet:
      return std::pow(x, q) * -std::expm1(-x);
    case Problem::HalfNeumann:
      return std::pow(x * x + 1.0, 0.5 * q);
  }
  return 0.0;
}

ProfileSolution newton_solve(Setup s, const SolveOptions& opt) {
  const int n = static_cast<int>(s.x.size());
  const double xe = s.x[n - 1];
  double airy_ratio = 0.0;
  if (s.problem == Problem::FullLine) {
    airy_ratio = std::exp(specfun::airy_ai_log(xe) - specfun::airy_ai_log(s.x[n - 2]));
  }
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = (1.0 + opt.guess_scale) * initial_guess(s, s.x[i]);

  Eigen::VectorXd F = residual(s, v, airy_ratio);
  double norm = F.norm();
  int iter = 0;
  bool done = false;
  Eigen::SparseLU<SpMat> lu;
  for (; iter < opt.max_iter && !done; ++iter) {
    SpMat J = jacobian(s, v, airy_ratio);
    lu.compute(J);
    if (lu.info() != Eigen::Success) throw SolverError("profile Newton: singular Jacobian", norm);
    const Eigen::VectorXd dv = lu.solve(-F);
    double step = 1.0;
    bool accepted = false;
    for (int k = 0; k < 40; ++k) {
      const Eigen::VectorXd trial = v + step * dv;
      const Eigen::VectorXd Ft = residual(s, trial, airy_ratio);
      const double nt = Ft.norm();
      if (std::isfinite(nt) && (nt < (1.0 - 1e-4 * step) * norm || nt < 1e-11)) {
        v = trial;
        F = Ft;
        norm = nt;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    const double dmax = dv.cwiseAbs().maxCoeff() * step;
    if (!accepted) {
      if (dv.cwiseAbs().maxCoeff() < 1e-12) break;
      throw SolverError("profile Newton: line search failed", norm);
    }
    if (dmax < 1e-14 * (1.0 + v.cwiseAbs().maxCoeff())) done = true;
  }
  if (!done && norm > 1e-9) throw SolverError("profile Newton: no convergence", norm);

  ProfileSolution sol;
  sol.p = s.p;
  sol.problem = s.problem;
  sol.x = s.x;
  sol.v.assign(v.data(), v.data() + n);
  sol.newton_iters = iter;
  sol.vxx.resize(n);
  for (int i = 0; i < n; ++i) sol.vxx[i] = f_of(s.p, mirrored(s.problem), s.x[i], sol.v[i]);
  const auto& f = sol.vxx;
  const double h = s.h;
  sol.vx.resize(n);
  for (int i = 1; i < n - 1; ++i) {
    sol.vx[i] = (sol.v[i + 1] - sol.v[i - 1]) / (2.0 * h) - h / 12.0 * (f[i + 1] - f[i - 1]);
  }
  sol.vx[0] = (sol.v[1] - sol.v[0]) / h - h * (97 * f[0] + 114 * f[1] - 39 * f[2] + 8 * f[3]) / 360.0;
  sol.vx[n - 1] = (sol.v[n - 1] - sol.v[n - 2]) / h +
                  h * (97 * f[n - 1] + 114 * f[n - 2] - 39 * f[n - 3] + 8 * f[n - 4]) / 360.0;
  double rs = 0.0;
  for (int i = 1; i < n - 1; ++i) rs = std::max(rs, std::abs(F[i]));
  sol.residual_sup = rs;

  switch (s.problem) {
    case Problem::FullLine:
      sol.left = Closure::AlgebraicWithCorrection;
      sol.right = Closure::AiryLogDerivative;
      sol.closure_defect = tail_defect(s.p, -s.x.front());
      break;
    case Problem::HalfDirichlet:
      sol.left = Closure::DirichletAtZero;
      sol.right = Closure::AlgebraicWithCorrection;
      sol.closure_defect = tail_defect(s.p, s.x.back());
      sol.v[0] = 0.0;
      break;
    case Problem::HalfNeumann:
      sol.left = Closure::NeumannAtZero;
      sol.right = Closure::AlgebraicWithCorrection;
      sol.closure_defect = tail_defect(s.p, s.x.back());
      break;
  }
  const int first = s.problem == Problem::HalfDirichlet ? 1 : 0;
  for (int i = first; i < n; ++i) {
    if (!(sol.v[i] > 0.0)) throw SolverError("profile Newton: converged to a non-positive profile", norm);
  }
  return sol;
}

void check_common(double p, int n) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("profile: power p must exceed 1");
  if (n < 1000) throw DomainError("profile: need at least 1000 nodes");
}

void check_defect(const ProfileSolution& sol, const SolveOptions& opt) {
  if (sol.closure_defect > opt.max_closure_defect) {
    throw TruncationError("profile: algebraic closure defect " + std::to_string(sol.closure_defect) +
                          " exceeds tolerance; extend the domain");
  }
}

}  // namespace

std::string to_string(Closure c) {
  switch (c) {
    case Closure::AlgebraicWithCorrection: return "algebraic-with-correction";
    case Closure::AiryLogDerivative: return "airy-log-derivative";
    case Closure::DirichletAtZero: return "dirichlet-at-0";
    case Closure::NeumannAtZero: return "neumann-at-0";
  }
  return "unknown";
}

double rhs(const ProfileSolution& sol, double x, double v) {
  return f_of(sol.p, mirrored(sol.problem), x, v);
}

Tail algebraic_tail(double p, double X) {
  const double q = 1.0 / p;
  const double a = (1.0 - p) / (p * p * p);
  return {std::pow(X, q) + a * std::pow(X, q - 3.0),
          q * std::pow(X, q - 1.0) + a * (q - 3.0) * std::pow(X, q - 4.0)};
}

ProfileSolution solve_full_line(double p, double x_left, double x_right, int n,
                                const SolveOptions& opt) {
  check_common(p, n);
  if (x_left > -15.0 || x_right < 8.0) {
    throw DomainError("solve_full_line: need x_left <= -15 and x_right >= 8");
  }
  // uniform spacing with x = 0 on a node
  const int kl = static_cast<int>(std::lround((n - 1) * (-x_left) / (x_right - x_left)));
  const double h = -x_left / kl;
  Setup s{p, Problem::FullLine, std::vector<double>(n), h};
  for (int i = 0; i < n; ++i) s.x[i] = (i - kl) * h;
  s.x[0] = x_left;
  auto sol = newton_solve(std::move(s), opt);
  check_defect(sol, opt);
  return sol;
}

namespace {
ProfileSolution solve_half(Problem problem, double p, double x_max, int n, const SolveOptions& opt) {
  check_common(p, n);
  if (x_max < 20.0) throw DomainError("half-line profile: need x_max >= 20");
  const double h = x_max / (n - 1);
  Setup s{p, problem, std::vector<double>(n), h};
  for (int i = 0; i < n; ++i) s.x[i] = i * h;
  s.x[n - 1] = x_max;
  auto sol = newton_solve(std::move(s), opt);
  check_defect(sol, opt);
  return sol;
}
}  // namespace

ProfileSolution solve_half_line_dirichlet(double p, double x_max, int n, const SolveOptions& opt) {
  return solve_half(Problem::HalfDirichlet, p, x_max, n, opt);
}

ProfileSolution solve_half_line_neumann(double p, double x_max, int n, const SolveOptions& opt) {
  return solve_half(Problem::HalfNeumann, p, x_max, n, opt);
}

Point evaluate(const ProfileSolution& sol, double x) {
  const double xl = sol.x.front();
  const double xr = sol.x.back();
  if (x < xl) {
    if (sol.problem != Problem::FullLine) throw DomainError("profile: half-line profile evaluated at x < 0");
    const auto t = algebraic_tail(sol.p, -x);
    return {t.value, -t.slope, rhs(sol, x, t.value)};
  }
  if (x > xr) {
    if (sol.problem == Problem::FullLine) {
      const double v = sol.v.back() * std::exp(specfun::airy_ai_log(x) - specfun::airy_ai_log(xr));
      return {v, v * specfun::airy_ai_log_derivative(x), x * v};
    }
    const auto t = algebraic_tail(sol.p, x);
    return {t.value, t.slope, rhs(sol, x, t.value)};
  }
  const std::size_t i = num::locate(sol.x, x);
  const auto r = num::quintic_hermite(sol.x[i], sol.x[i + 1], sol.v[i], sol.vx[i], sol.vxx[i],
                                      sol.v[i + 1], sol.vx[i + 1], sol.vxx[i + 1], x);
  return {r.f, r.df, r.d2f};
}

double integrate(const ProfileSolution& sol, double a, double b,
                 const std::function<double(double, const Point&)>& g) {
  const double slack = 1e-9 * (1.0 + std::abs(a) + std::abs(b));
  if (a < sol.x.front() - slack || b > sol.x.back() + slack) {
    throw TruncationError("profile integral: interval leaves the grid");
  }
  if (b <= a) return 0.0;
  a = std::max(a, sol.x.front());
  b = std::min(b, sol.x.back());
  const std::size_t i0 = num::locate(sol.x, a);
  const std::size_t i1 = num::locate(sol.x, b);
  double sum = 0.0;
  for (std::size_t i = i0; i <= i1; ++i) {
    const double lo = std::max(a, sol.x[i]);
    const double hi = std::min(b, sol.x[i + 1]);
    if (hi <= lo) continue;
    auto cell = [&](double x) {
      const auto r = num::quintic_hermite(sol.x[i], sol.x[i + 1], sol.v[i], sol.vx[i], sol.vxx[i],
                                          sol.v[i + 1], sol.vx[i + 1], sol.vxx[i + 1], x);
      return g(x, Point{r.f, r.df, r.d2f});
    };
    sum += boost::math::quadrature::gauss<double, 7>::integrate(cell, lo, hi);
  }
  return sum;
}

double integral_v2_positive(const ProfileSolution& sol) {
  if (sol.problem != Problem::FullLine) throw DomainError("integral_v2_positive: full-line profile required");
  const double xr = sol.x.back();
  const double inner = integrate(sol, 0.0, xr, [](double, const Point& q) { return q.v * q.v; });
  // int_x^inf Ai^2 = Ai'^2 - x Ai^2
  const double ld = specfun::airy_ai_log_derivative(xr);
  const double vr = sol.v.back();
  return inner + vr * vr * (ld * ld - xr);
}

double hm_identity_defect(const ProfileSolution& sol) {
  if (sol.problem != Problem::FullLine || sol.p != 2.0) {
    throw DomainError("hm_identity_defect: needs the full-line p = 2 profile");
  }
  const double X = -sol.x.front();
  const double left = integrate(sol, sol.x.front(), 0.0,
                                [](double x, const Point& q) { return q.v * q.v + x; });
  // v^2 + x = -X^{-2}/4 - (9/8) X^{-5} + ... beyond the left end
  const double left_tail = -1.0 / (4.0 * X) - 9.0 / (32.0 * std::pow(X, 4));
  return left + left_tail + integral_v2_positive(sol);
}

double vx_log_constant(const ProfileSolution& sol, double X, double upper) {
  if (!(X > 0.0)) throw DomainError("vx_log_constant: X must be positive");
  if (-X < sol.x.front() - 1e-9 * X) throw TruncationError("vx_log_constant: X beyond the grid");
  const double I = integrate(sol, -X, upper, [](double, const Point& q) { return q.vx * q.vx; });
  return I - 0.25 * std::log(X);
}

ConnectionRatio connection_ratio(const ProfileSolution& sol) {
  if (sol.problem != Problem::FullLine) throw DomainError("connection_ratio: full-line profile required");
  ConnectionRatio out;
  const double hi = std::min(8.0, sol.x.back());
  for (double x = 4.0; x <= hi + 1e-12; x += 0.5) {
    const auto a = specfun::airy(x);
    if (a.ai <= 1e-250) break;
    out.sample_x.push_back(x);
    out.sample_ratio.push_back(evaluate(sol, x).v / a.ai);
  }
  if (out.sample_ratio.empty()) throw DomainError("connection_ratio: no usable right-tail samples");
  const auto [mn, mx] = std::minmax_element(out.sample_ratio.begin(), out.sample_ratio.end());
  out.ratio = out.sample_ratio.back();
  out.flatness = (*mx - *mn) / std::abs(out.ratio);
  out.converged = out.flatness <= 1e-2;
  return out;
}

namespace {

struct Tridiag {
  std::vector<double> d, e;
  double first_scale = 1.0;  // psi_0 = first_scale * y_0 (Neumann symmetrisation)
  int offset = 0;            // grid index of the first unknown
};

Tridiag build_operator(const ProfileSolution& sol, const std::vector<double>& x,
                       const std::vector<double>& v) {
  const int n = static_cast<int>(x.size());
  const double h = x[1] - x[0];
  const double h2 = h * h;
  const bool mir = mirrored(sol.problem);
  Tridiag T;
  const bool neumann = sol.problem == Problem::HalfNeumann;
  T.offset = neumann ? 0 : 1;
  const int m = n - 1 - T.offset;
  T.d.resize(m);
  T.e.assign(m, -1.0 / h2);
  for (int k = 0; k < m; ++k) {
    const int i = k + T.offset;
    T.d[k] = 2.0 / h2 + df_of(sol.p, mir, x[i], v[i]);
  }
  if (neumann) {
    T.e[0] = -std::sqrt(2.0) / h2;
    T.first_scale = std::sqrt(2.0);
  }
  return T;
}

std::vector<double> lowest_eigs(Tridiag T, int count, std::vector<double>* vec) {
  const lapack_int m = static_cast<lapack_int>(T.d.size());
  count = std::min<int>(count, m);
  std::vector<double> w(m);
  std::vector<double> z(vec ? static_cast<std::size_t>(m) * count : 1);
  std::vector<lapack_int> isuppz(2 * count);
  lapack_int found = 0;
  const int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, vec ? 'V' : 'N', 'I', m, T.d.data(), T.e.data(),
                                  0.0, 0.0, 1, count, 0.0, &found, w.data(), z.data(), m,
                                  isuppz.data());
  if (info != 0 || found < count) throw SolverError("linearization: tridiagonal eigensolve failed", info);
  w.resize(found);
  if (vec) vec->assign(z.begin(), z.begin() + m);
  return w;
}

}  // namespace

LinearizationSpectrum linearization(const ProfileSolution& sol) {
  const int n = static_cast<int>(sol.x.size());
  const bool mir = mirrored(sol.problem);
  LinearizationSpectrum out;
  std::vector<double> q(n);
  for (int i = 0; i < n; ++i) q[i] = df_of(sol.p, mir, sol.x[i], sol.v[i]);
  out.potential_min = *std::min_element(q.begin(), q.end());
  bool inc = q[n - 1] > q[n - 2] && q[n - 2] > q[n - 3];
  if (sol.problem == Problem::FullLine) inc = inc && q[0] > q[1] && q[1] > q[2];
  out.tails_increasing = inc;

  Tridiag T = build_operator(sol, sol.x, sol.v);
  std::vector<double> y;
  const auto w = lowest_eigs(T, 4, &y);
  out.mu1 = w[0];
  out.mu_min_abs = std::abs(w[0]);
  for (double mu : w) out.mu_min_abs = std::min(out.mu_min_abs, std::abs(mu));
  out.psi1.assign(n, 0.0);
  for (std::size_t k = 0; k < y.size(); ++k) out.psi1[k + T.offset] = y[k];
  out.psi1[T.offset] *= T.first_scale;
  double big = 0.0;
  for (double s : out.psi1) big = std::abs(s) > std::abs(big) ? s : big;
  for (double& s : out.psi1) s /= big;

  // truncation sensitivity on a 1.5x wider domain filled from the analytic tails
  const double h = sol.h();
  std::vector<double> xw, vw;
  const int extra = (n - 1) / 2;
  const int left_extra = sol.problem == Problem::FullLine ? extra / 2 : 0;
  const int right_extra = sol.problem == Problem::FullLine ? extra - left_extra : extra;
  for (int k = left_extra; k > 0; --k) {
    const double x = sol.x.front() - k * h;
    xw.push_back(x);
    vw.push_back(evaluate(sol, x).v);
  }
  xw.insert(xw.end(), sol.x.begin(), sol.x.end());
  vw.insert(vw.end(), sol.v.begin(), sol.v.end());
  for (int k = 1; k <= right_extra; ++k) {
    const double x = sol.x.back() + k * h;
    xw.push_back(x);
    vw.push_back(evaluate(sol, x).v);
  }
  out.mu1_wide = lowest_eigs(build_operator(sol, xw, vw), 1, nullptr)[0];
  return out;
}

}  // namespace tfc::painleve
