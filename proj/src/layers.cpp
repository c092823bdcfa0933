#include "tfc/layers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tfc/error.hpp"
#include "tfc/numerics.hpp"

namespace tfc::layers {

double cutoff(double t, double d) { return 1.0 - num::smoothstep5((std::abs(t) - d) / d).v; }

double glue(double x, double L) { return num::smoothstep5((-L - x) / L).v; }

ApproxSolution::ApproxSolution(trap::TFData tf, std::shared_ptr<const painleve::ProfileSolution> hm, double epsilon,
                               double delta, double L, bool lambda_from_ground_state)
    : tf_(std::move(tf)),
      hm_(std::move(hm)),
      eps_(epsilon),
      e23_(std::pow(epsilon, 2.0 / 3.0)),
      delta_(delta),
      L_(L),
      from_gs_(lambda_from_ground_state) {
  delta0_ = 0.5 * tf_.min_curvature_radius();
  double extent = tf_.R;
  for (std::size_t i = 0; i < tf_.px.size(); ++i) extent = std::max(extent, std::hypot(tf_.px[i], tf_.py[i]));
  box_ = 3.0 * extent;
}

double ApproxSolution::a_fermi(double t, double theta) const {
  const auto y = tf_.from_fermi(t, theta);
  return tf_.a(y[0], y[1]);
}

double ApproxSolution::u_in(double t, double theta) const {
  const double b = tf_.beta_at(theta);
  return std::cbrt(eps_) * b * painleve::evaluate(*hm_, b * t / e23_).v;
}

double ApproxSolution::u_out_tilde(double t, double theta) const {
  const double b = tf_.beta_at(theta);
  const double x = b * t / e23_;
  const double V = painleve::evaluate(*hm_, x).v;
  const double rad = a_fermi(t, theta) + e23_ * b * b * cutoff(b * t, delta_) * (x + V * V);
  if (rad < 0.0) throw ParameterError("u_ap: negative radicand in the modified outer profile; increase L");
  return std::sqrt(rad);
}

double ApproxSolution::value_fermi(double t, double theta) const {
  const double b = tf_.beta_at(theta);
  const double x = b * t / e23_;
  if (t < 0.0 && x <= -2.0 * L_) return u_out_tilde(t, theta);
  const double ui = u_in(t, theta);
  if (x >= -2.0 * L_ && x <= delta_ / e23_) {
    const double rho = glue(x, L_);
    return rho > 0.0 ? ui + rho * (u_out_tilde(t, theta) - ui) : ui;
  }
  return cutoff(b * t, 10.0 * delta_) * ui;
}

double ApproxSolution::value(double y1, double y2) const {
  std::array<double, 2> f;
  try {
    f = tf_.to_fermi(y1, y2);
  } catch (const DomainError&) {
    return std::sqrt(std::max(tf_.a(y1, y2), 0.0));
  }
  // beyond the tubular neighbourhood only the deep branches apply
  if (f[0] < -delta0_ && !tf_.radial) return std::sqrt(std::max(tf_.a(y1, y2), 0.0));
  if (f[0] > delta0_ && !tf_.radial) return 0.0;
  if (f[0] < 0.0 && tf_.beta_at(f[1]) * f[0] <= -2.0 * delta_) return std::sqrt(std::max(tf_.a(y1, y2), 0.0));
  return value_fermi(f[0], f[1]);
}

ApproxSolution build_u_ap(const trap::TFData& tf, std::shared_ptr<const painleve::ProfileSolution> hm, double epsilon,
                          double delta, double L, bool lambda_from_ground_state) {
  if (!(epsilon > 0.0)) throw DomainError("build_u_ap: epsilon must be positive");
  if (!hm || hm->problem != painleve::Problem::FullLine || hm->p != 2.0) {
    throw DomainError("build_u_ap: needs the p = 2 full-line profile");
  }
  const double e23 = std::pow(epsilon, 2.0 / 3.0);
  const double delta0 = 0.5 * tf.min_curvature_radius();
  const double Rref = tf.radial ? tf.R : tf.ell / (2.0 * std::numbers::pi);
  if (!(delta > 0.0)) delta = 0.5 * std::min(delta0, 0.1 * Rref);
  if (!(L > 0.0)) L = std::min(4.0, delta / e23 / 4.0);
  if (delta / e23 < 4.0 * L * (1.0 - 1e-12)) {
    throw ParameterError("build_u_ap: need delta eps^{-2/3} >= 4 L");
  }
  return ApproxSolution(tf, std::move(hm), epsilon, delta, L, lambda_from_ground_state);
}

double residual(const ApproxSolution& ap, double y1, double y2, double h) {
  const double e23 = std::pow(ap.epsilon(), 2.0 / 3.0);
  if (!(h > 0.0)) h = e23 / 40.0;
  const double B = ap.box_half();
  if (std::abs(y1) + 2 * h > B || std::abs(y2) + 2 * h > B) throw DomainError("residual: stencil leaves the box");
  const double u = ap.value(y1, y2);
  const auto d2 = [&](double dx, double dy) {
    return (-ap.value(y1 + 2 * dx, y2 + 2 * dy) + 16.0 * ap.value(y1 + dx, y2 + dy) - 30.0 * u +
            16.0 * ap.value(y1 - dx, y2 - dy) - ap.value(y1 - 2 * dx, y2 - 2 * dy)) /
           (12.0 * h * h);
  };
  const double lap = d2(h, 0.0) + d2(0.0, h);
  const double a = ap.tf().a(y1, y2);
  return lap - u * (u * u - a) / (ap.epsilon() * ap.epsilon());
}

double stretched_residual(const ApproxSolution& ap, double y1, double y2, double h) {
  return std::pow(ap.epsilon(), 4.0 / 3.0) * residual(ap, y1, y2, h);
}

double v2_tail(const painleve::ProfileSolution& hm, double x) {
  const double pos = painleve::integral_v2_positive(hm);
  if (x == 0.0) return pos;
  const auto sq = [](double, const painleve::Point& p) { return p.v * p.v; };
  if (x >= hm.x_right()) {
    // Ai-type tail: int_x^inf Ai^2 = Ai'^2 - x Ai^2, scaled by v(x)/Ai(x)
    const auto p = painleve::evaluate(hm, x);
    const double ld = p.vx / p.v;
    return p.v * p.v * (ld * ld - x);
  }
  if (x > 0.0) return pos - painleve::integrate(hm, 0.0, x, sq);
  if (x >= hm.x_left()) return pos + painleve::integrate(hm, x, 0.0, sq);
  throw DomainError("v2_tail: x is left of the profile grid");
}

double PredictionBundle::inner(double t, double theta) const {
  const double b = tf.beta_at(theta);
  return std::cbrt(epsilon) * b * painleve::evaluate(*hm, b * t / std::pow(epsilon, 2.0 / 3.0)).v;
}

double PredictionBundle::f_eps(double r, double R_eps, double beta_eps) const {
  const double e23 = std::pow(epsilon, 2.0 / 3.0);
  const double x = beta_eps * (r - R_eps) / e23;
  const double V = painleve::evaluate(*hm, x).v;
  return R_eps / beta_eps * e23 * v2_tail(*hm, x) / (V * V);
}

double PredictionBundle::f_boundary(double R_eps, double beta_eps) const {
  return R_eps / beta_eps * int_v2_pos / (V0 * V0);
}

double PredictionBundle::f0(double r) const {
  if (!tf.radial) throw DomainError("f0: radial traps only");
  r = std::abs(r);
  if (r >= R) return 0.0;
  const auto A = [&](double s) { return lambda0 - tf.trap.W_r(s); };
  return num::gauss_legendre([&](double s) { return s * A(s); }, r, R) / A(r);
}

PredictionBundle predict(const trap::TFData& tf, std::shared_ptr<const painleve::ProfileSolution> hm,
                         double epsilon) {
  if (!hm || hm->problem != painleve::Problem::FullLine || hm->p != 2.0) {
    throw DomainError("predict: needs the p = 2 full-line profile");
  }
  PredictionBundle b;
  b.epsilon = epsilon;
  b.tf = tf;
  b.hm = hm;
  b.lambda0 = tf.lambda;
  b.R = tf.R;
  b.ell = tf.ell;
  b.c_m2 = 0.5 * tf.lambda - 0.25 * trap::mass_squared(tf.trap, tf.lambda);
  double int_b3 = 0.0;
  if (tf.radial) {
    int_b3 = std::pow(tf.beta.front(), 3) * tf.ell;
  } else {
    for (double be : tf.beta) int_b3 += be * be * be;
    int_b3 *= tf.ell / static_cast<double>(tf.beta.size());
  }
  b.c_log = int_b3 / 12.0;
  b.V0 = painleve::evaluate(*hm, 0.0).v;
  b.int_v2_pos = painleve::integral_v2_positive(*hm);
  return b;
}

std::vector<SectionRow> normal_section(const ApproxSolution& ap, double theta, const std::vector<double>& ts) {
  std::vector<SectionRow> rows;
  rows.reserve(ts.size());
  for (double t : ts) {
    const auto y = ap.tf().from_fermi(t, theta);
    SectionRow row;
    row.t = t;
    row.theta = theta;
    row.u_ap = ap.value(y[0], y[1]);
    row.inner = ap.u_in(t, theta);
    row.tf = std::sqrt(std::max(ap.tf().a(y[0], y[1]), 0.0));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace tfc::layers
