#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tfc/gpsolve.hpp"
#include "tfc/layers.hpp"

namespace tfc::verify {

struct RateFit {
  std::vector<double> eps;
  std::vector<double> err;
  double exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
  std::optional<double> log_power;
};

/// Least squares of ln(err / |ln eps|^k) against ln(eps).
RateFit rate_fit(const std::vector<double>& eps, const std::vector<double>& err,
                 std::optional<double> log_power = std::nullopt);

struct CornerErrors {
  /// sup |eta - inner| / (eps + |t|^{3/2}) over -d <= t <= 0.
  double inner_band = 0.0;
  /// sup |eta - inner| over 0 <= t <= d, raw and divided by eps.
  double outer_band = 0.0;
  double outer_band_scaled = 0.0;
  /// sup |eta - sqrt(a)| / (eps^2 |t|^{-5/2}) over -R/2 <= t <= -D eps^{2/3}.
  double mid_band = 0.0;
  /// sup |eta - sqrt(a)| / eps^2 over t < -R/2.
  double interior = 0.0;
  /// -slope of ln eta against (r - R)/eps^{2/3} over [3, 10] in those units.
  double decay_rate = 0.0;
  /// max of eta / (eps^{1/3} (beta + 0.2) Ai(beta (r - R)/eps^{2/3})) for r - R >= 3 eps^{2/3}.
  double envelope_ratio = 0.0;
  /// same with the measured connection ratio gamma in place of (beta + 0.2)/beta.
  double envelope_gamma_ratio = 0.0;
};

/// Radial states; t = r - R_eps with R_eps and beta taken from the approximation's TF data.
CornerErrors corner_layer_error(const gp::GroundState& gs, const layers::ApproxSolution& ap, double gamma);

struct Monotonicity {
  double max_weighted = 0.0;
  double c = 0.0;
  double eta_r_origin = 0.0;
};
/// Band -delta/2 <= t <= 3 eps^{2/3}.
Monotonicity monotonicity_check(const gp::GroundState& gs, double R_eps, double delta);

struct Holder {
  double seminorm = 0.0;
  double grad_sup = 0.0;
  std::size_t pairs = 0;
};
/// Radial pairs within distance 0.2, log-spaced separations, at most 1e6 pairs.
Holder holder_and_gradient(const gp::GroundState& gs, double alpha);

struct LinBound {
  double band_min_scaled = 0.0;  // min over |t| <= delta of (3 eta^2 + W - lambda) / eps^{2/3}
  double band_min_beta = 0.0;    // same divided by beta^2
  double complement_min = 0.0;   // min elsewhere of (3 eta^2 + W - lambda)/(1 + |y|^2)
};
LinBound linearization_bound(const gp::GroundState& gs, const trap::TFData& tf_eps, double delta);

struct FCompare {
  double sup = 0.0;
  double sup_scaled = 0.0;  // times eps^{-1/2}
  double f_R_scaled = 0.0;  // f_eps(R_eps) / eps^{2/3}
  double f_R_pred = 0.0;
};
FCompare f_compare(const gp::GroundState& gs, const layers::PredictionBundle& bundle, double R_eps,
                   double beta_eps);

/// One row of per-eps measurements; the report is a pure function of these rows.
struct Measurement {
  double eps = 0, lambda = 0, lambda0 = 0, lambda_identity = 0, mass = 0, residual = 0;
  double energy_total = 0, energy_g1 = 0, energy_constant = 0, split_defect = 0, identity_defect = 0;
  double c_m2 = 0, c_log = 0;
  double sup_eta = 0, sup_bound = 0, tf_sup = 0;
  double R_eps = 0, beta_eps = 0, delta = 0;
  double inner_band = 0, outer_band = 0, mid_band = 0, interior = 0, decay_rate = 0;
  double envelope_ratio = 0, envelope_gamma_ratio = 0, gamma = 0;
  double holder_half = 0, holder_06 = 0, grad_sup = 0;
  double mono_max = 0, mono_c = 0, eta_r_origin = 0;
  double lin_band = 0, lin_band_beta = 0, lin_complement = 0, pot_min = 0;
  double f_sup = 0, f_sup_scaled = 0, f_R_scaled = 0, f_R_pred = 0;
  double xi0 = 0;
};

struct Field {
  const char* name;
  double Measurement::*ptr;
};
const std::vector<Field>& measurement_fields();

struct Check {
  std::string name;
  std::string anchor;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation;  // how value is compared with threshold
  bool pass = false;
  std::string note;
};

struct VerificationReport {
  std::vector<Check> checks;
  std::vector<double> eps;
  std::string trap;
  int n = 0;
};

/// Solve at one eps and measure everything the report needs.
Measurement measure(const trap::Trap& trap, double eps, int n, std::shared_ptr<const painleve::ProfileSolution> hm,
                    double gamma, double pot_min);

/// Pure assembly of checks from measurement rows (eps strictly decreasing).
VerificationReport assemble(const std::vector<Measurement>& rows, const std::string& trap_desc, int n);

/// Full harness: Painleve profile, per-eps solves on `jobs` threads, assembly.
struct HarnessResult {
  std::vector<Measurement> rows;
  VerificationReport report;
};
HarnessResult run(const trap::Trap& trap, const std::vector<double>& eps, int n, int jobs);

}  // namespace tfc::verify
