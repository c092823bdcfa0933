#pragma once

#include <vector>

#include "tfc/trap.hpp"

namespace tfc::gp {

struct EnergyParts {
  double total = 0.0;
  double g1 = 0.0;
  double constant = 0.0;
};

/// Unit-mass ground state on a radial grid or a square 2-D grid.
///
/// Radial grids are uniform in s in [0, 1] with r = r(s) an odd graded map, so
/// derivatives in r follow from the chain rule.  2-D grids hold interior nodes of
/// [-box, box]^2 (Dirichlet on the box), stored row-major with y2 as the row.
struct GroundState {
  double epsilon = 0.0;
  trap::Trap trap = trap::Trap::harmonic(1.0);
  bool radial = true;

  // radial
  double hs = 0.0;
  std::vector<double> r, r_s, r_ss, weight;  // weight: 2 pi r r_s times Simpson weight in s
  std::vector<double> eta_r, eta_rr;

  // 2-D
  double box = 0.0;
  int n2 = 0;
  std::vector<double> axis;

  std::vector<double> eta;
  double lambda = 0.0;
  /// lambda from eps^2 int|grad eta|^2 + int W eta^2 + int eta^4.
  double lambda_identity = 0.0;
  double lambda0 = 0.0;
  double mass = 0.0;
  EnergyParts energy;
  int iterations = 0;
  double residual = 0.0;
  bool continued = false;

  double r_max() const { return r.back(); }
  double at(int i, int j) const { return eta[static_cast<std::size_t>(j) * n2 + i]; }
};

struct RadialOptions {
  int max_iter = 80;
  double tol = 1e-9;
  /// Fraction of nodes placed in |r - R| <= 5 eps^{2/3} (raised to reach 300 nodes).
  double band_fraction = 0.25;
};

/// Default outer radius: max(1.5 R, radius where W - lambda0 = 1).
double default_r_max(const trap::Trap& trap);

/// Radial Newton solve of eps^2 (eta'' + eta'/r) + (lambda - W) eta - eta^3 = 0 with
/// eta'(0) = 0, eta(r_max) = 0 and unit mass.  r_max <= 0 picks the default.
GroundState solve_radial(const trap::Trap& trap, double epsilon, double r_max = 0.0,
                         int n = 4001, const RadialOptions& opt = {});

/// eta and its r-derivatives at any r >= 0 (0 beyond r_max).
struct Value {
  double v;
  double dv;
  double d2v;
};
Value eval_radial(const GroundState& gs, double r);

struct FlowOptions {
  int max_steps = 200000;
  double dt = 0.5;
  double energy_tol = 1e-12;
  double residual_tol = 1e-6;
};

/// Normalized gradient flow with a spectral (sine) Laplacian; n intervals per axis,
/// (n - 1)^2 interior nodes.
GroundState solve_2d(const trap::Trap& trap, double epsilon, double box_half, int n,
                     const FlowOptions& opt = {});

/// Direct energy, and the split into g1 plus the constant part at lambda0 = tf.lambda.
EnergyParts energy(const GroundState& gs, const trap::TFData& tf);

/// int (A+)^2 with A = lambda0 - W, using the state's own quadrature.
double grid_a_plus_squared(const GroundState& gs, double lambda0);

/// Sup over nodes of |eps^2 (eta'' + eta'/r) + (lambda - W) eta - eta^3| (radial) or the
/// rescaled discrete L2 Lagrange residual (2-D).
double residual(const GroundState& gs);

struct XiF {
  std::vector<double> r;
  std::vector<double> xi;
  std::vector<double> f;
  /// f is undefined where eta^2 <= 1e-30.
  std::vector<bool> valid;
};
XiF xi_f(const GroundState& gs);

}  // namespace tfc::gp
