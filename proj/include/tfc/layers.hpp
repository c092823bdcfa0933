#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "tfc/painleve.hpp"
#include "tfc/trap.hpp"

namespace tfc::layers {

/// Smooth plateau cutoff n_d: 1 for |t| <= d, 0 for |t| >= 2d, quintic in between.
double cutoff(double t, double d);
/// rho_L: 1 for x <= -2L, 0 for x >= -L.
double glue(double x, double L);

/// Matched inner/outer approximation in physical coordinates.
///
/// With x = beta t / eps^{2/3}:
///   u_in   = eps^{1/3} beta V(x)
///   u_out~ = sqrt(a + eps^{2/3} beta^2 n_delta(beta t) (x + V(x)^2))
///   u_ap   = u_out~                      inside, x <= -2L
///          = u_in + rho_L(x)(u_out~ - u_in)  for -2L <= x <= delta eps^{-2/3}
///          = n_{10 delta}(beta t) u_in     elsewhere
/// Far from the boundary (no Fermi chart) u_ap = sqrt(a^+).
class ApproxSolution {
 public:
  ApproxSolution(trap::TFData tf, std::shared_ptr<const painleve::ProfileSolution> hm, double epsilon,
                 double delta, double L, bool lambda_from_ground_state);

  double epsilon() const { return eps_; }
  double delta() const { return delta_; }
  double L() const { return L_; }
  double delta0() const { return delta0_; }
  double box_half() const { return box_; }
  bool lambda_from_ground_state() const { return from_gs_; }
  const trap::TFData& tf() const { return tf_; }
  const painleve::ProfileSolution& hm() const { return *hm_; }

  double value(double y1, double y2) const;
  double value_fermi(double t, double theta) const;
  double u_in(double t, double theta) const;
  /// Modified outer profile; throws ParameterError on a negative radicand.
  double u_out_tilde(double t, double theta) const;
  /// a_eps = lambda - W at the point with Fermi coordinates (t, theta).
  double a_fermi(double t, double theta) const;

 private:
  trap::TFData tf_;
  std::shared_ptr<const painleve::ProfileSolution> hm_;
  double eps_, e23_, delta_, L_, delta0_, box_;
  bool from_gs_;
};

/// Defaults: delta = min(delta0, 0.1 R)/2 with delta0 half the smallest curvature radius,
/// L = min(4, delta eps^{-2/3}/4).  Non-positive delta or L selects the default.
ApproxSolution build_u_ap(const trap::TFData& tf, std::shared_ptr<const painleve::ProfileSolution> hm,
                          double epsilon, double delta = 0.0, double L = 0.0,
                          bool lambda_from_ground_state = false);

/// Delta u - eps^{-2} u (u^2 - a) by fourth-order differences with step h (physical units).
/// The stretched-coordinate residual is eps^{4/3} times this value.
double residual(const ApproxSolution& ap, double y1, double y2, double h = 0.0);
double stretched_residual(const ApproxSolution& ap, double y1, double y2, double h = 0.0);

/// int_x^inf V^2 for the full-line profile.
double v2_tail(const painleve::ProfileSolution& hm, double x);

struct PredictionBundle {
  double epsilon = 0.0;
  double lambda0 = 0.0;
  double R = 0.0;
  double ell = 0.0;
  double c_m2 = 0.0;
  double c_log = 0.0;
  double V0 = 0.0;
  double int_v2_pos = 0.0;
  trap::TFData tf;
  std::shared_ptr<const painleve::ProfileSolution> hm;

  /// eps^{1/3} beta(theta) V(beta t / eps^{2/3}).
  double inner(double t, double theta) const;
  /// Boundary-layer prediction of f_eps at r with radius R_eps and beta_eps (radial traps).
  double f_eps(double r, double R_eps, double beta_eps) const;
  /// R beta^{-1} V(0)^{-2} int_0^inf V^2, the prediction for f_eps(R)/eps^{2/3}.
  double f_boundary(double R_eps, double beta_eps) const;
  /// (1/A(r)) int_r^R s A(s) ds for r < R, 0 beyond (radial traps).
  double f0(double r) const;
};

/// tf must be at lambda0.
PredictionBundle predict(const trap::TFData& tf, std::shared_ptr<const painleve::ProfileSolution> hm,
                         double epsilon);

struct SectionRow {
  double t, theta, u_ap, inner, tf;
};
/// Samples along the normal at arclength theta.
std::vector<SectionRow> normal_section(const ApproxSolution& ap, double theta, const std::vector<double>& ts);

}  // namespace tfc::layers
