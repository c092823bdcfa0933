#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace tfc::trap {

enum class Kind { Harmonic, GaussianBump, RadialTable };

std::string to_string(Kind k);

/// Trapping potential W(y) with gradient.
///
/// harmonic:      W = y1^2 + aniso^2 y2^2
/// gaussian_bump: W = r^2 + a exp(-b r^2)
/// radial_table:  monotone-preserving interpolation of (r, W) samples, continued
///                beyond the last sample by W_N + W'_N (r - r_N) + (r - r_N)^2.
class Trap {
 public:
  static Trap harmonic(double aniso);
  static Trap gaussian_bump(double a, double b);
  static Trap radial_table(std::vector<double> r, std::vector<double> w);

  Kind kind() const { return kind_; }
  bool radial() const;
  double aniso() const { return aniso_; }
  double bump_a() const { return a_; }
  double bump_b() const { return b_; }

  double W(double y1, double y2) const;
  std::array<double, 2> grad(double y1, double y2) const;
  /// Radial profile and derivative; radial traps only.
  double W_r(double r) const;
  double dW_r(double r) const;
  double inf_W() const;
  /// Smallest radius beyond which W > lambda for sure.
  double support_bound(double lambda) const;
  std::string describe() const;

 private:
  Kind kind_ = Kind::Harmonic;
  double aniso_ = 1.0;
  double a_ = 0.0;
  double b_ = 1.0;
  struct Table;
  std::shared_ptr<const Table> table_;
};

/// m(lambda) = int (lambda - W)^+ dy.
double mass(const Trap& trap, double lambda);
/// int ((lambda - W)^+)^2 dy.
double mass_squared(const Trap& trap, double lambda);

/// Thomas-Fermi chemical potential: m(lambda0) = 1 within tol.
double compute_lambda0(const Trap& trap, double tol = 1e-12);

enum class BoundaryMethod { Auto, Contour };

/// Thomas-Fermi domain boundary at level lambda and its geometry.
struct TFData {
  Trap trap = Trap::harmonic(1.0);
  double lambda = 0.0;
  bool radial = false;
  double R = 0.0;
  double ell = 0.0;
  /// Arclength samples, points, outward normals, beta and curvature per sample.
  std::vector<double> theta, px, py, nx, ny, beta, curvature;
  /// d gamma / d theta per sample (contour boundaries).
  std::vector<double> tx, ty;
  double mass = 0.0;

  double a(double y1, double y2) const { return lambda - trap.W(y1, y2); }
  double a_plus(double y1, double y2) const;
  double density(double y1, double y2) const;
  /// Periodic interpolation of beta at arclength theta.
  double beta_at(double theta) const;
  double min_curvature_radius() const;

  /// Fermi coordinates (t, theta): y = gamma(theta) + t nu(theta), t < 0 inside.
  std::array<double, 2> to_fermi(double y1, double y2) const;
  std::array<double, 2> from_fermi(double t, double theta) const;
  /// Boundary point and unit normal at arclength theta.
  std::array<double, 4> curve_at(double theta) const;
};

TFData boundary_and_beta(const Trap& trap, double lambda, int n_theta,
                         BoundaryMethod method = BoundaryMethod::Auto);

/// y -> sqrt((lambda - W(y))^+).
std::function<double(double, double)> tf_density(const TFData& tf);

}  // namespace tfc::trap
