#pragma once

namespace tfc::specfun {

/// Airy functions and derivatives at a real point.
///
/// `ai_underflow` is set when |Ai| or |Ai'| fell below 1e-300 and was
/// returned as 0; `bi_overflow` when Bi or Bi' exceeded the double range.
struct AiryValues {
  double x = 0.0;
  double ai = 0.0;
  double ai_prime = 0.0;
  double bi = 0.0;
  double bi_prime = 0.0;
  bool ai_underflow = false;
  bool bi_overflow = false;
};

/// Ai, Ai', Bi, Bi' for |x| <= 200.
///
/// Maclaurin series (evaluated in quad precision to survive the cancellation
/// for positive x) inside |x| <= 8, asymptotic expansions outside.
/// Throws DomainError for non-finite x or |x| > 200.
AiryValues airy(double x);

/// Ai'(x)/Ai(x), finite for every x >= 0 including where Ai underflows.
double airy_ai_log_derivative(double x);

/// ln Ai(x) for x >= 0.
double airy_ai_log(double x);

/// Ai(x) for x >= 0 as mantissa * exp(-zeta) with zeta = 2 x^{3/2} / 3.
/// Returns the mantissa ai(x) * exp(zeta); no underflow for any x >= 0.
double airy_ai_scaled(double x);

/// Switchover between the Maclaurin and asymptotic branches.
inline constexpr double kAirySeriesLimit = 8.0;

}  // namespace tfc::specfun
