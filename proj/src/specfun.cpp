#include "tfc/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "tfc/error.hpp"

namespace tfc::specfun {
namespace {

using quad = __float128;

// Ai(0) = 3^{-2/3}/Gamma(2/3), -Ai'(0) = 3^{-1/3}/Gamma(1/3).
const __float128 kAi0 = 0.355028053887817239260063186004183176Q;
const __float128 kAip0 = 0.258819403792806798405183560189203963Q;

// Series values carried in quad precision so that the Ai combination
// c1 f - c2 g keeps ~20 digits after cancelling for x up to 8.
AiryValues series_airy(double xd) {
  const quad x = xd;
  const quad x3 = x * x * x;
  quad f = 1, g = x, fp = 0, gp = 1;
  quad tf = 1, tg = x;
  quad tfp = 0, tgp = 1;
  for (int k = 1; k < 400; ++k) {
    tf *= x3 / quad((3 * k - 1) * (3 * k));
    tg *= x3 / quad((3 * k) * (3 * k + 1));
    // term-by-term derivatives: ratios x^3/((3k-3)(3k-1)) and x^3/((3k-2)(3k))
    if (k == 1) {
      tfp = x * x / 2;
    } else {
      tfp *= x3 / quad((3 * k - 3) * (3 * k - 1));
    }
    tgp *= x3 / quad((3 * k - 2) * (3 * k));
    f += tf;
    g += tg;
    fp += tfp;
    gp += tgp;
    const quad a = (tf < 0 ? -tf : tf) + (tg < 0 ? -tg : tg) + (tfp < 0 ? -tfp : tfp) +
                   (tgp < 0 ? -tgp : tgp);
    if (a < 1e-40Q && k > 3) break;
  }
  const quad c1 = kAi0;
  const quad c2 = kAip0;
  const quad sqrt3 = 1.73205080756887729352744634150587237Q;
  AiryValues out;
  out.x = xd;
  out.ai = double(c1 * f - c2 * g);
  out.ai_prime = double(c1 * fp - c2 * gp);
  out.bi = double(sqrt3 * (c1 * f + c2 * g));
  out.bi_prime = double(sqrt3 * (c1 * fp + c2 * gp));
  return out;
}

constexpr int kAsymTerms = 14;

struct AsymCoefficients {
  std::array<double, kAsymTerms + 1> u{};
  std::array<double, kAsymTerms + 1> v{};
};

AsymCoefficients make_coefficients() {
  AsymCoefficients c;
  c.u[0] = 1.0;
  c.v[0] = 1.0;
  for (int k = 1; k <= kAsymTerms; ++k) {
    const double kk = k;
    c.u[k] = c.u[k - 1] * (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) / ((2 * kk - 1) * 216 * kk);
    c.v[k] = -(6 * kk + 1) / (6 * kk - 1) * c.u[k];
  }
  return c;
}

const AsymCoefficients& coefficients() {
  static const AsymCoefficients c = make_coefficients();
  return c;
}

// Sums S(sign) = sum_k sign^k c_k / zeta^k.
double asym_sum(const std::array<double, kAsymTerms + 1>& c, double zeta, double sign) {
  double sum = 0.0;
  double p = 1.0;
  for (int k = 0; k <= kAsymTerms; ++k) {
    sum += c[k] * p;
    p *= sign / zeta;
  }
  return sum;
}

AiryValues asymptotic_positive(double x) {
  const auto& c = coefficients();
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  const double x14 = std::sqrt(std::sqrt(x));
  const double rpi = 1.0 / std::sqrt(std::numbers::pi);
  const double su_m = asym_sum(c.u, zeta, -1.0);
  const double sv_m = asym_sum(c.v, zeta, -1.0);
  const double su_p = asym_sum(c.u, zeta, 1.0);
  const double sv_p = asym_sum(c.v, zeta, 1.0);
  AiryValues out;
  out.x = x;
  const double em = std::exp(-zeta);
  out.ai = 0.5 * rpi / x14 * em * su_m;
  out.ai_prime = -0.5 * rpi * x14 * em * sv_m;
  if (zeta < 700.0) {
    const double ep = std::exp(zeta);
    out.bi = rpi / x14 * ep * su_p;
    out.bi_prime = rpi * x14 * ep * sv_p;
  } else {
    out.bi = std::numeric_limits<double>::infinity();
    out.bi_prime = std::numeric_limits<double>::infinity();
    out.bi_overflow = true;
  }
  return out;
}

AiryValues asymptotic_negative(double x) {
  const auto& c = coefficients();
  const double z = -x;
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  const double z14 = std::sqrt(std::sqrt(z));
  const double rpi = 1.0 / std::sqrt(std::numbers::pi);
  // Even/odd alternating partial sums.
  double pu = 0, qu = 0, pv = 0, qv = 0;
  double zpow = 1.0;
  for (int k = 0; k <= kAsymTerms; ++k) {
    const double sgn = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      pu += sgn * c.u[k] * zpow;
      pv += sgn * c.v[k] * zpow;
    } else {
      qu += sgn * c.u[k] * zpow;
      qv += sgn * c.v[k] * zpow;
    }
    zpow /= zeta;
  }
  const double phase = zeta - std::numbers::pi / 4.0;
  const double cs = std::cos(phase);
  const double sn = std::sin(phase);
  AiryValues out;
  out.x = x;
  out.ai = rpi / z14 * (cs * pu + sn * qu);
  out.bi = rpi / z14 * (-sn * pu + cs * qu);
  out.ai_prime = rpi * z14 * (sn * pv - cs * qv);
  out.bi_prime = rpi * z14 * (cs * pv + sn * qv);
  return out;
}

}  // namespace

AiryValues airy(double x) {
  if (!std::isfinite(x) || std::abs(x) > 200.0) {
    throw DomainError("airy: argument must be finite with |x| <= 200");
  }
  AiryValues out;
  if (std::abs(x) <= kAirySeriesLimit) {
    out = series_airy(x);
  } else if (x > 0) {
    out = asymptotic_positive(x);
  } else {
    out = asymptotic_negative(x);
  }
  constexpr double tiny = 1e-300;
  if (x > 0 && (std::abs(out.ai) < tiny || std::abs(out.ai_prime) < tiny)) {
    out.ai_underflow = true;
    if (std::abs(out.ai) < tiny) out.ai = 0.0;
    if (std::abs(out.ai_prime) < tiny) out.ai_prime = 0.0;
  }
  if (!std::isfinite(out.bi) || !std::isfinite(out.bi_prime)) out.bi_overflow = true;
  return out;
}

double airy_ai_log_derivative(double x) {
  if (!std::isfinite(x)) throw DomainError("airy_ai_log_derivative: non-finite argument");
  if (x <= kAirySeriesLimit) {
    const auto a = airy(x);
    return a.ai_prime / a.ai;
  }
  const auto& c = coefficients();
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  return -std::sqrt(x) * asym_sum(c.v, zeta, -1.0) / asym_sum(c.u, zeta, -1.0);
}

double airy_ai_scaled(double x) {
  if (!std::isfinite(x) || x < 0) throw DomainError("airy_ai_scaled: requires finite x >= 0");
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  if (x <= kAirySeriesLimit) return airy(x).ai * std::exp(zeta);
  const auto& c = coefficients();
  return 0.5 / std::sqrt(std::numbers::pi) / std::sqrt(std::sqrt(x)) * asym_sum(c.u, zeta, -1.0);
}

double airy_ai_log(double x) {
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  return std::log(airy_ai_scaled(x)) - zeta;
}

}  // namespace tfc::specfun
