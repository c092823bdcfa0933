#include "tfc/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "tfc/error.hpp"
#include "tfc/numerics.hpp"
#include "tfc/specfun.hpp"

namespace tfc::verify {

namespace {

double max_min_ratio(const std::vector<double>& v) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double x : v) {
    lo = std::min(lo, std::abs(x));
    hi = std::max(hi, std::abs(x));
  }
  return lo > 0 ? hi / lo : std::numeric_limits<double>::infinity();
}

}  // namespace

RateFit rate_fit(const std::vector<double>& eps, const std::vector<double>& err, std::optional<double> log_power) {
  if (eps.size() < 3 || eps.size() != err.size()) throw DomainError("rate_fit: need >= 3 paired samples");
  RateFit fit;
  fit.eps = eps;
  fit.err = err;
  fit.log_power = log_power;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(err[i] > 0.0)) throw DomainError("rate_fit: errors must be positive");
    if (!(eps[i] > 0.0 && eps[i] < 1.0)) throw DomainError("rate_fit: eps must lie in (0, 1)");
    if (i > 0 && !(eps[i] < eps[i - 1])) throw DomainError("rate_fit: eps must decrease strictly");
    double e = err[i];
    if (log_power) e /= std::pow(std::abs(std::log(eps[i])), *log_power);
    lx.push_back(std::log(eps[i]));
    ly.push_back(std::log(e));
  }
  const auto line = num::fit_line(lx, ly);
  fit.exponent = line.slope;
  fit.prefactor = std::exp(line.intercept);
  fit.r_squared = line.r_squared;
  return fit;
}

CornerErrors corner_layer_error(const gp::GroundState& gs, const layers::ApproxSolution& ap, double gamma) {
  if (!gs.radial) throw DomainError("corner_layer_error: radial states only");
  const double eps = gs.epsilon;
  const double e = std::pow(eps, 2.0 / 3.0);
  const double e13 = std::cbrt(eps);
  const auto& tf = ap.tf();
  const double R = tf.R, beta = tf.beta.front();
  const double d = 0.5 * ap.delta();
  const double D = 3.0;
  // the corner band is far thinner than D eps^{2/3}; the outer bands use a fixed fraction of R
  const double dm = 0.5 * R;
  CornerErrors ce;
  int n_inner = 0, n_outer = 0, n_mid = 0, n_int = 0;
  std::vector<double> fx, fy;
  for (std::size_t i = 0; i + 1 < gs.r.size(); ++i) {
    const double r = gs.r[i], t = r - R, u = gs.eta[i];
    const double a = tf.lambda - gs.trap.W_r(r);
    const double inner = e13 * beta * painleve::evaluate(ap.hm(), beta * t / e).v;
    if (t >= -d && t <= 0.0) {
      ce.inner_band = std::max(ce.inner_band, std::abs(u - inner) / (eps + std::pow(-t, 1.5)));
      ++n_inner;
    }
    if (t >= 0.0 && t <= d) {
      ce.outer_band = std::max(ce.outer_band, std::abs(u - inner));
      ++n_outer;
    }
    if (t >= -dm && t <= -D * e) {
      ce.mid_band = std::max(ce.mid_band, std::abs(u - std::sqrt(a)) / (eps * eps * std::pow(-t, -2.5)));
      ++n_mid;
    }
    if (t < -dm) {
      ce.interior = std::max(ce.interior, std::abs(u - std::sqrt(a)) / (eps * eps));
      ++n_int;
    }
    const double xs = t / e;
    if (xs >= 3.0 && xs <= 10.0 && r < 0.95 * gs.r_max() && u > 0.0) {
      fx.push_back(xs);
      fy.push_back(std::log(u));
    }
    if (xs >= 3.0 && r < 0.95 * gs.r_max()) {
      const auto ai = specfun::airy(beta * xs);
      if (!ai.ai_underflow && ai.ai > 1e-250) {
        ce.envelope_ratio = std::max(ce.envelope_ratio, u / (e13 * (beta + 0.2) * ai.ai));
        ce.envelope_gamma_ratio = std::max(ce.envelope_gamma_ratio, u / (e13 * beta * gamma * ai.ai));
      }
    }
  }
  if (n_inner == 0 || n_outer == 0 || n_mid == 0 || n_int == 0) {
    throw GridError("corner_layer_error: a sampling band holds no grid nodes");
  }
  ce.outer_band_scaled = ce.outer_band / eps;
  if (fx.size() >= 2) ce.decay_rate = -num::fit_line(fx, fy).slope;
  return ce;
}

Monotonicity monotonicity_check(const gp::GroundState& gs, double R_eps, double delta) {
  if (!gs.radial) throw DomainError("monotonicity_check: radial states only");
  const double e = std::pow(gs.epsilon, 2.0 / 3.0);
  Monotonicity m;
  m.max_weighted = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < gs.r.size(); ++i) {
    const double t = gs.r[i] - R_eps;
    if (t < -0.5 * delta || t > 3.0 * e) continue;
    m.max_weighted = std::max(m.max_weighted, gs.eta_r[i] * std::sqrt(std::abs(t) + e));
  }
  m.c = -m.max_weighted;
  m.eta_r_origin = gs.eta_r.front();
  return m;
}

Holder holder_and_gradient(const gp::GroundState& gs, double alpha) {
  if (!gs.radial) throw DomainError("holder_and_gradient: radial states only");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("holder_and_gradient: alpha must lie in (0, 1]");
  const auto& r = gs.r;
  const std::size_t n = r.size();
  double hmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < n; ++i) hmin = std::min(hmin, r[i + 1] - r[i]);
  const double dmax = 0.2;
  const std::size_t K = std::max<std::size_t>(2, 1000000 / n);
  std::vector<double> seps(K);
  for (std::size_t k = 0; k < K; ++k) seps[k] = hmin * std::pow(dmax / hmin, static_cast<double>(k) / (K - 1));
  Holder h;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t last = i;
    for (std::size_t k = 0; k < K; ++k) {
      const double target = r[i] + seps[k];
      if (target > r.back()) break;
      std::size_t j = num::locate(r, target);
      if (j + 1 < n && target - r[j] > r[j + 1] - target) ++j;
      if (j <= last) j = last + 1;
      if (j >= n || r[j] - r[i] > dmax) break;
      last = j;
      h.seminorm = std::max(h.seminorm, std::abs(gs.eta[j] - gs.eta[i]) / std::pow(r[j] - r[i], alpha));
      ++h.pairs;
    }
  }
  for (double g : gs.eta_r) h.grad_sup = std::max(h.grad_sup, std::abs(g));
  return h;
}

LinBound linearization_bound(const gp::GroundState& gs, const trap::TFData& tf_eps, double delta) {
  if (!gs.radial) throw DomainError("linearization_bound: radial states only");
  const double e = std::pow(gs.epsilon, 2.0 / 3.0);
  const double beta = tf_eps.beta.front();
  LinBound lb;
  lb.band_min_scaled = lb.complement_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < gs.r.size(); ++i) {
    const double r = gs.r[i];
    const double q = 3.0 * gs.eta[i] * gs.eta[i] + gs.trap.W_r(r) - gs.lambda;
    if (std::abs(r - tf_eps.R) <= delta) {
      lb.band_min_scaled = std::min(lb.band_min_scaled, q / e);
    } else {
      lb.complement_min = std::min(lb.complement_min, q / (1.0 + r * r));
    }
  }
  lb.band_min_beta = lb.band_min_scaled / (beta * beta);
  return lb;
}

FCompare f_compare(const gp::GroundState& gs, const layers::PredictionBundle& bundle, double R_eps,
                   double beta_eps) {
  const auto xf = gp::xi_f(gs);
  FCompare fc;
  for (std::size_t i = 0; i < xf.r.size(); ++i) {
    if (!xf.valid[i]) continue;
    fc.sup = std::max(fc.sup, std::abs(xf.f[i] - bundle.f0(xf.r[i])));
  }
  fc.sup_scaled = fc.sup / std::sqrt(gs.epsilon);
  // xi and eta at R_eps
  const std::size_t i = num::locate(gs.r, R_eps);
  const double w = (R_eps - gs.r[i]) / (gs.r[i + 1] - gs.r[i]);
  const double xi = (1 - w) * xf.xi[i] + w * xf.xi[i + 1];
  const double u = gp::eval_radial(gs, R_eps).v;
  fc.f_R_scaled = xi / (u * u) / std::pow(gs.epsilon, 2.0 / 3.0);
  fc.f_R_pred = bundle.f_boundary(R_eps, beta_eps);
  return fc;
}

const std::vector<Field>& measurement_fields() {
  static const std::vector<Field> fields = {
      {"eps", &Measurement::eps},
      {"lambda", &Measurement::lambda},
      {"lambda0", &Measurement::lambda0},
      {"lambda_identity", &Measurement::lambda_identity},
      {"mass", &Measurement::mass},
      {"residual", &Measurement::residual},
      {"energy_total", &Measurement::energy_total},
      {"energy_g1", &Measurement::energy_g1},
      {"energy_constant", &Measurement::energy_constant},
      {"split_defect", &Measurement::split_defect},
      {"identity_defect", &Measurement::identity_defect},
      {"c_m2", &Measurement::c_m2},
      {"c_log", &Measurement::c_log},
      {"sup_eta", &Measurement::sup_eta},
      {"sup_bound", &Measurement::sup_bound},
      {"tf_sup", &Measurement::tf_sup},
      {"R_eps", &Measurement::R_eps},
      {"beta_eps", &Measurement::beta_eps},
      {"delta", &Measurement::delta},
      {"inner_band", &Measurement::inner_band},
      {"outer_band", &Measurement::outer_band},
      {"mid_band", &Measurement::mid_band},
      {"interior", &Measurement::interior},
      {"decay_rate", &Measurement::decay_rate},
      {"envelope_ratio", &Measurement::envelope_ratio},
      {"envelope_gamma_ratio", &Measurement::envelope_gamma_ratio},
      {"gamma", &Measurement::gamma},
      {"holder_half", &Measurement::holder_half},
      {"holder_06", &Measurement::holder_06},
      {"grad_sup", &Measurement::grad_sup},
      {"mono_max", &Measurement::mono_max},
      {"mono_c", &Measurement::mono_c},
      {"eta_r_origin", &Measurement::eta_r_origin},
      {"lin_band", &Measurement::lin_band},
      {"lin_band_beta", &Measurement::lin_band_beta},
      {"lin_complement", &Measurement::lin_complement},
      {"pot_min", &Measurement::pot_min},
      {"f_sup", &Measurement::f_sup},
      {"f_sup_scaled", &Measurement::f_sup_scaled},
      {"f_R_scaled", &Measurement::f_R_scaled},
      {"f_R_pred", &Measurement::f_R_pred},
      {"xi0", &Measurement::xi0},
  };
  return fields;
}

Measurement measure(const trap::Trap& trap, double eps, int n, std::shared_ptr<const painleve::ProfileSolution> hm,
                    double gamma, double pot_min) {
  const double l0 = trap::compute_lambda0(trap);
  const auto tf0 = trap::boundary_and_beta(trap, l0, 64);
  // room for the exterior decay fit out to 10 eps^{2/3} beyond R
  const double r_max = std::max(gp::default_r_max(trap), tf0.R + 12.0 * std::pow(eps, 2.0 / 3.0));
  const auto gs = gp::solve_radial(trap, eps, r_max, n);
  const auto tfe = trap::boundary_and_beta(trap, gs.lambda, 64);
  const auto ap = layers::build_u_ap(tfe, hm, eps, 0.0, 0.0, true);
  const auto bundle = layers::predict(tf0, hm, eps);
  Measurement m;
  m.eps = eps;
  m.lambda = gs.lambda;
  m.lambda0 = gs.lambda0;
  m.lambda_identity = gs.lambda_identity;
  m.mass = gs.mass;
  m.residual = gs.residual;
  m.energy_total = gs.energy.total;
  m.energy_g1 = gs.energy.g1;
  m.energy_constant = gs.energy.constant;
  m.split_defect = std::abs(gs.energy.g1 + gs.energy.constant - gs.energy.total) / std::abs(gs.energy.total);
  double quart = 0.0;
  for (std::size_t i = 0; i < gs.r.size(); ++i) quart += gs.weight[i] * std::pow(gs.eta[i], 4);
  const double e2 = eps * eps;
  m.identity_defect =
      std::abs(gs.energy.total - (gs.lambda / (2 * e2) - quart / (4 * e2))) / std::abs(gs.energy.total);
  m.c_m2 = bundle.c_m2;
  m.c_log = bundle.c_log;
  for (std::size_t i = 0; i < gs.r.size(); ++i) {
    m.sup_eta = std::max(m.sup_eta, gs.eta[i]);
    m.tf_sup =
        std::max(m.tf_sup, std::abs(gs.eta[i] - std::sqrt(std::max(gs.lambda0 - trap.W_r(gs.r[i]), 0.0))));
  }
  m.sup_bound = std::sqrt(std::max(gs.lambda - trap.inf_W(), 0.0));
  m.R_eps = tfe.R;
  m.beta_eps = tfe.beta.front();
  m.delta = ap.delta();
  const auto ce = corner_layer_error(gs, ap, gamma);
  m.inner_band = ce.inner_band;
  m.outer_band = ce.outer_band;
  m.mid_band = ce.mid_band;
  m.interior = ce.interior;
  m.decay_rate = ce.decay_rate;
  m.envelope_ratio = ce.envelope_ratio;
  m.envelope_gamma_ratio = ce.envelope_gamma_ratio;
  m.gamma = gamma;
  const auto h05 = holder_and_gradient(gs, 0.5);
  m.holder_half = h05.seminorm;
  m.grad_sup = h05.grad_sup;
  m.holder_06 = holder_and_gradient(gs, 0.6).seminorm;
  const auto mono = monotonicity_check(gs, tfe.R, ap.delta());
  m.mono_max = mono.max_weighted;
  m.mono_c = mono.c;
  m.eta_r_origin = mono.eta_r_origin;
  const auto lb = linearization_bound(gs, tfe, ap.delta());
  m.lin_band = lb.band_min_scaled;
  m.lin_band_beta = lb.band_min_beta;
  m.lin_complement = lb.complement_min;
  m.pot_min = pot_min;
  const auto fc = f_compare(gs, bundle, tfe.R, tfe.beta.front());
  m.f_sup = fc.sup;
  m.f_sup_scaled = fc.sup_scaled;
  m.f_R_scaled = fc.f_R_scaled;
  m.f_R_pred = fc.f_R_pred;
  m.xi0 = gp::xi_f(gs).xi.front();
  return m;
}

VerificationReport assemble(const std::vector<Measurement>& rows, const std::string& trap_desc, int n) {
  VerificationReport rep;
  rep.trap = trap_desc;
  rep.n = n;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rep.eps.push_back(rows[i].eps);
    if (i > 0 && !(rows[i].eps < rows[i - 1].eps)) throw ConfigError("assemble: eps must decrease strictly");
  }
  if (rows.empty()) throw ConfigError("assemble: no measurements");
  const auto col = [&](auto f) {
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(f(r));
    return v;
  };
  const auto maxof = [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); };
  const auto minof = [](const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); };
  const auto add = [&](std::string name, std::string anchor, double value, double threshold, std::string rel,
                       bool pass, std::string note = "") {
    rep.checks.push_back({std::move(name), std::move(anchor), value, threshold, std::move(rel), pass, std::move(note)});
  };
  const bool ladder = rows.size() >= 3;
  const Measurement& last = rows.back();

  {
    const double v = maxof(col([](const Measurement& m) { return std::abs(m.mass - 1.0); }));
    add("mass_constraint", "∫|u|² dy = 1", v, 1e-9, "<=", v <= 1e-9);
  }
  {
    const double v = maxof(col([](const Measurement& m) { return m.residual; }));
    add("euler_lagrange_residual", "is the Lagrange multiplier", v, 1e-9, "<=", v <= 1e-9);
  }
  {
    const double v = maxof(col([](const Measurement& m) { return m.sup_eta - m.sup_bound; }));
    add("maximum_principle", "η_ε(y) ≤ max √(a⁺_ε)", v, 1e-6, "<=", v <= 1e-6);
  }
  {
    const auto gaps = col([](const Measurement& m) { return m.lambda - m.lambda0; });
    bool ok = true;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      if (!(gaps[i] > 0.0)) ok = false;
      if (i > 0 && !(std::abs(gaps[i]) < std::abs(gaps[i - 1]))) ok = false;
    }
    add("lambda_gap_shrinks", "λ_ε − λ₀ = O(|ln ε|ε²)", minof(gaps), 0.0, "> 0, decreasing", ok);
    if (ladder && minof(gaps) > 0.0) {
      const auto fit = rate_fit(rep.eps, gaps, 1.0);
      add("lambda_gap_rate", "λ_ε − λ₀ = O(|ln ε|ε²)", fit.exponent, 1.8, ">= (r^2 >= 0.98)",
          fit.exponent >= 1.8 && fit.r_squared >= 0.98, "r^2 = " + std::to_string(fit.r_squared));
    }
  }
  {
    const double v = maxof(col([](const Measurement& m) { return m.split_defect; }));
    add("energy_split", "the functional G_ε can be rewritten", v, 1e-9, "<=", v <= 1e-9);
    const double w = maxof(col([](const Measurement& m) { return m.identity_defect; }));
    add("energy_multiplier_identity", "testing equation (1.8) with η_ε", w, 1e-6, "<=", w <= 1e-6);
  }
  if (ladder) {
    std::vector<double> x, y;
    for (const auto& m : rows) {
      x.push_back(std::abs(std::log(m.eps)));
      y.push_back(m.energy_total - m.c_m2 / (m.eps * m.eps));
    }
    const auto fit = num::fit_line(x, y);
    const double rel = std::abs(fit.slope / last.c_log - 1.0);
    add("energy_log_slope", "(1/12)(∫₀^{ℓ₀}β₀³(θ)dθ)|ln ε|", fit.slope, last.c_log, "within 10% of", rel <= 0.1,
        "relative deviation " + std::to_string(rel));
    const double g = max_min_ratio(col([](const Measurement& m) { return m.energy_g1 / std::abs(std::log(m.eps)); }));
    add("g1_log_bound", "G¹_ε(η_ε) ≤ C|ln ε|", g, 2.0, "max/min <=", g <= 2.0);
  }
  if (ladder) {
    const double a = max_min_ratio(col([](const Measurement& m) { return m.inner_band; }));
    add("corner_inner_band", "O(ε + |t|^{3/2})", a, 3.0, "max/min <=", a <= 3.0);
    const double b = max_min_ratio(col([](const Measurement& m) { return m.mid_band; }));
    add("outer_band_weighted", "O(ε²|t|^{−5/2})", b, 3.0, "max/min <=", b <= 3.0);
    const double c = max_min_ratio(col([](const Measurement& m) { return m.interior; }));
    add("interior_eps2", "O(ε²)", c, 3.0, "max/min <=", c <= 3.0);
    const double t = max_min_ratio(col([](const Measurement& m) { return m.tf_sup / std::cbrt(m.eps); }));
    add("tf_uniform_convergence", "≤ Cε^{1/3}", t, 3.0, "max/min <=", t <= 3.0);
  }
  {
    const double d = minof(col([](const Measurement& m) { return m.decay_rate; }));
    add("exterior_decay", "Cε^{1/3} exp{−cε^{−2/3} dist", d, 0.0, ">", d > 0.0);
    const double e = maxof(col([](const Measurement& m) { return m.envelope_ratio; }));
    add("exterior_envelope", "η_ε(s) ≤ ε^{1/3}(β_ε + o(1))Ai", e, 1.0, "<=", e <= 1.0,
        "o(1) taken as 0.2; measured V/Ai ratio " + std::to_string(last.gamma));
    const double f = maxof(col([](const Measurement& m) { return m.envelope_gamma_ratio; }));
    add("exterior_envelope_gamma", "V(x) ∼ γAi(x)", f, 1.05, "<=", f <= 1.05,
        "envelope eps^{1/3} beta gamma Ai with the measured gamma");
  }
  if (ladder) {
    const double h = max_min_ratio(col([](const Measurement& m) { return m.holder_half; }));
    add("holder_half", "‖η_ε‖_{C^{1/2}(ℝ²)} ≤ C", h, 1.5, "max/min <=", h <= 1.5);
    const auto h6 = col([](const Measurement& m) { return m.holder_06; });
    bool inc = true;
    for (std::size_t i = 1; i < h6.size(); ++i) inc = inc && h6[i] > h6[i - 1];
    add("holder_06_increasing", "does not converge … in C^{1/2}", h6.back() / h6.front(), 1.0,
        "strictly increasing", inc);
    const double g = max_min_ratio(col([](const Measurement& m) { return m.grad_sup * std::cbrt(m.eps); }));
    add("gradient_bound", "‖∇η_ε‖_{L∞(ℝ²)} ≤ Cε^{−1/3}", g, 2.0, "max/min <=", g <= 2.0);
  }
  {
    const double mx = maxof(col([](const Measurement& m) { return m.mono_max; }));
    add("monotonicity_sign", "(η_ε)_t ≤ −c(|t| + ε^{2/3})^{−1/2}", mx, 0.0, "<", mx < 0.0);
    if (ladder) {
      const double c = max_min_ratio(col([](const Measurement& m) { return m.mono_c; }));
      add("monotonicity_constant", "(η_ε)_t ≤ −c(|t| + ε^{2/3})^{−1/2}", c, 2.0, "max/min <=", c <= 2.0);
    }
  }
  {
    const auto band = col([](const Measurement& m) { return m.lin_band; });
    const double r = max_min_ratio(band);
    add("linearization_band", "cε^{2/3} + c|t|, if |t| ≤ δ", minof(band), 0.0, "> 0 and max/min <= 2",
        minof(band) > 0.0 && r <= 2.0, "max/min = " + std::to_string(r));
    const double c = minof(col([](const Measurement& m) { return m.lin_complement; }));
    add("linearization_complement", "c + c|y|^p, otherwise", c, 0.0, ">", c > 0.0);
    const double rel = std::abs(last.lin_band_beta / last.pot_min - 1.0);
    add("linearization_vs_profile", "3V²(x) + x ≥ c > 0", last.lin_band_beta, last.pot_min, "within 20% of",
        rel <= 0.2, "smallest eps of the ladder; relative deviation " + std::to_string(rel));
  }
  {
    if (ladder) {
      const double r = max_min_ratio(col([](const Measurement& m) { return m.f_sup_scaled; }));
      add("f_sup_rate", "‖f_ε − f₀‖_{L∞(ℝ)} ≤ Cε^{1/2}", r, 2.0, "max/min <=", r <= 2.0);
    }
    const double rel = std::abs(last.f_R_scaled / last.f_R_pred - 1.0);
    add("f_boundary_value", "uniformly in [R − o(ε^{1/3}), ∞)", last.f_R_scaled, last.f_R_pred, "within 15% of",
        rel <= 0.15, "smallest eps of the ladder; relative deviation " + std::to_string(rel));
    const double xi = maxof(col([](const Measurement& m) { return std::abs(m.xi0 - 0.5 / std::numbers::pi); }));
    add("xi_origin", "plays a crucial role in the study of the functional E_ε", xi, 1e-8, "<=", xi <= 1e-8);
  }
  return rep;
}

HarnessResult run(const trap::Trap& trap, const std::vector<double>& eps, int n, int jobs) {
  auto hm = std::make_shared<const painleve::ProfileSolution>(painleve::solve_full_line(2.0, -30.0, 15.0, 4000));
  const double gamma = painleve::connection_ratio(*hm).ratio;
  const double pot_min = painleve::linearization(*hm).potential_min;
  HarnessResult out;
  out.rows.resize(eps.size());
  std::vector<std::exception_ptr> errors(eps.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (std::size_t k = next++; k < eps.size(); k = next++) {
      try {
        out.rows[k] = measure(trap, eps[k], n, hm, gamma, pot_min);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int nthreads = std::max(1, std::min<int>(jobs, static_cast<int>(eps.size())));
  std::vector<std::thread> pool;
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  out.report = assemble(out.rows, trap.describe(), n);
  return out;
}

}  // namespace tfc::verify
