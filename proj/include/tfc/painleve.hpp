#pragma once

#include <functional>
#include <string>
#include <vector>

namespace tfc::painleve {

/// Which boundary value problem a profile solves.
///
/// FullLine: v'' = v(|v|^p + x) on the real line, v ~ (-x)^{1/p} on the left,
/// v -> 0 on the right.  The half-line problems use the mirrored equation
/// u'' = u(|u|^p - x) on [0, x_max] with u ~ x^{1/p} on the right.
enum class Problem { FullLine, HalfDirichlet, HalfNeumann };

enum class Closure { AlgebraicWithCorrection, AiryLogDerivative, DirichletAtZero, NeumannAtZero };

std::string to_string(Closure c);

struct ProfileSolution {
  double p = 2.0;
  Problem problem = Problem::FullLine;
  std::vector<double> x;
  std::vector<double> v;
  std::vector<double> vx;
  std::vector<double> vxx;
  Closure left = Closure::AlgebraicWithCorrection;
  Closure right = Closure::AiryLogDerivative;
  double residual_sup = 0.0;
  int newton_iters = 0;
  /// Estimated error of the algebraic closure at the truncated end.
  double closure_defect = 0.0;

  double x_left() const { return x.front(); }
  double x_right() const { return x.back(); }
  double h() const { return x[1] - x[0]; }
};

struct SolveOptions {
  int max_iter = 60;
  /// Multiplies the default initial guess by (1 + guess_scale).
  double guess_scale = 0.0;
  /// Refuse closures whose estimated defect exceeds this.
  double max_closure_defect = 1e-6;
};

/// Right-hand side of the profile equation for the given problem orientation.
double rhs(const ProfileSolution& sol, double x, double v);

/// Two-term algebraic tail X^{1/p} + a X^{1/p-3}, a = (1-p)/p^3, and its X-derivative.
struct Tail {
  double value;
  double slope;
};
Tail algebraic_tail(double p, double X);

ProfileSolution solve_full_line(double p, double x_left, double x_right, int n,
                                const SolveOptions& opt = {});
ProfileSolution solve_half_line_dirichlet(double p, double x_max, int n,
                                          const SolveOptions& opt = {});
ProfileSolution solve_half_line_neumann(double p, double x_max, int n,
                                        const SolveOptions& opt = {});

/// Value and derivatives at any x; quintic Hermite inside the grid, analytic tails outside.
struct Point {
  double v;
  double vx;
  double vxx;
};
Point evaluate(const ProfileSolution& sol, double x);

/// int_a^b g(x, v(x), v_x(x)) dx by per-cell Gauss-Legendre; [a, b] must lie inside the grid.
double integrate(const ProfileSolution& sol, double a, double b,
                 const std::function<double(double, const Point&)>& g);

/// int_{-inf}^0 (v^2 + x) + int_0^inf v^2 with analytic tail corrections. Needs p = 2.
double hm_identity_defect(const ProfileSolution& sol);

/// int_{-X}^{upper} v_x^2 dx - ln(X)/4.
double vx_log_constant(const ProfileSolution& sol, double X, double upper = 0.0);

struct ConnectionRatio {
  double ratio = 0.0;
  double flatness = 0.0;
  bool converged = false;
  std::vector<double> sample_x;
  std::vector<double> sample_ratio;
};
ConnectionRatio connection_ratio(const ProfileSolution& sol);

struct LinearizationSpectrum {
  double potential_min = 0.0;
  double mu1 = 0.0;
  std::vector<double> psi1;
  /// Eigenvalue of smallest magnitude among the lowest few.
  double mu_min_abs = 0.0;
  /// mu1 recomputed on a 1.5x wider domain.
  double mu1_wide = 0.0;
  bool tails_increasing = false;
};
LinearizationSpectrum linearization(const ProfileSolution& sol);

/// int_0^inf v^2 for a full-line profile (right tail via Airy).
double integral_v2_positive(const ProfileSolution& sol);

}  // namespace tfc::painleve
