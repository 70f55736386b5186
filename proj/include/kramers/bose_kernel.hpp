#pragma once

#include <cmath>
#include <string>

#include "kramers/quadrature.hpp"

namespace kramers {

namespace detail {

// ln(1 - exp(alpha - x^2)), negative everywhere on (0, inf) for alpha <= 0.
// Two branches keep full precision both near the alpha = 0 singularity
// (where exp(y) rounds to 1) and deep in the Gaussian tail.
inline double log_bose_weight(double x, double alpha) {
  const double y = alpha - x * x;
  if (y > -0.5) return std::log(-std::expm1(y));
  return std::log1p(-std::exp(y));
}

// Integral over [0, inf) of an integrand with a Gaussian-type envelope.
// The substitution t = s^2 on [0, 1] softens the ln(t)-type endpoint
// singularity the alpha = 0 kernel develops at t = 0.
template <class G>
double integrate_kernel_decay(G&& g, const QuadratureSpec& spec,
                              double upper = 8.0) {
  auto soft = [&](double s) { return 2.0 * s * g(s * s); };
  double r = integrate_finite(soft, 0.0, 1.0, spec);
  if (upper > 1.0) r += integrate_finite(g, 1.0, upper, spec);
  return r;
}

// zeta(s) for s > 1: fixed 10^6-term partial sum plus the integral tail
// estimate with midpoint correction; remainder ~ s/12 * M^(-s-1).
inline double zeta_partial_sum(double s) {
  constexpr long M = 1'000'000;
  double sum = 0.0;
  for (long m = M; m >= 1; --m) sum += std::pow(static_cast<double>(m), -s);
  const double Md = static_cast<double>(M);
  sum += std::pow(Md, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(Md, -s) +
         s / 12.0 * std::pow(Md, -s - 1.0);
  return sum;
}

}  // namespace detail

/// Li_s(e^alpha) for alpha <= 0, s > 1. For alpha < 0 the defining series is
/// summed with the geometric remainder bound e^{(m+1)alpha}/(1 - e^alpha);
/// alpha = 0 reduces to zeta(s).
inline double polylog_exp(double s, double alpha, int max_terms = 200000,
                          double tol = 1e-14) {
  if (!(std::isfinite(s) && std::isfinite(alpha)))
    throw NonFiniteInput("polylog_exp: non-finite argument");
  if (alpha > 0.0)
    throw DivergentSeries("polylog_exp: series diverges for alpha > 0");
  if (alpha == 0.0) return detail::zeta_partial_sum(s);
  const double r = std::exp(alpha);
  double sum = 0.0;
  for (int m = 1; m <= max_terms; ++m) {
    const double md = static_cast<double>(m);
    sum += std::exp(md * alpha) / std::pow(md, s);
    const double bound = std::exp((md + 1.0) * alpha) / (1.0 - r);
    if (bound <= tol * std::max(std::abs(sum), 1e-300)) return sum;
  }
  throw ToleranceNotReached("polylog_exp: remainder bound not met within " +
                            std::to_string(max_terms) + " terms");
}

/// Series oracle for the moments l_n(alpha): termwise integration of
/// ln(1 - e^{alpha - x^2}) = -sum_m e^{m alpha - m x^2}/m gives
///   l_n(alpha) = -(Gamma((n+1)/2)/2) Li_{(n+3)/2}(e^alpha).
/// Used in tests as an independent check on moment_l.
inline double moment_l_series(int n, double alpha, int terms = 200000,
                              double tol = 1e-14) {
  if (n < 0) throw std::invalid_argument("moment_l_series: n >= 0");
  const double g = std::tgamma(0.5 * (n + 1));
  return -0.5 * g * polylog_exp(0.5 * (n + 3), alpha, terms, tol);
}

/// Reduced chemical potential plus cached kernel moments. Immutable after
/// construction; all downstream modules take the context and never
/// recompute l_n.
struct KernelContext {
  double alpha = 0.0;
  double l0 = 0.0, l1 = 0.0, l2 = 0.0;
  QuadratureSpec quad{};

  static KernelContext make(double alpha, QuadratureSpec quad = {});
};

/// Raw half-range moment l_n(alpha) = int_0^inf x^n ln(1 - e^{alpha - x^2}) dx
/// by adaptive quadrature; strictly negative.
inline double moment_l(int n, double alpha, const QuadratureSpec& spec) {
  if (n < 0 || n > 4)
    throw std::invalid_argument("moment_l: n must be in {0,...,4}");
  if (!std::isfinite(alpha)) throw NonFiniteInput("moment_l: alpha");
  if (alpha > 0.0) throw std::invalid_argument("moment_l: alpha must be <= 0");
  auto f = [&](double x) {
    return std::pow(x, n) * detail::log_bose_weight(x, alpha);
  };
  return detail::integrate_kernel_decay(f, spec);
}

inline double moment_l(int n, const KernelContext& ctx) {
  return moment_l(n, ctx.alpha, ctx.quad);
}

inline KernelContext KernelContext::make(double alpha, QuadratureSpec quad) {
  quad.validate();
  if (!std::isfinite(alpha)) throw NonFiniteInput("KernelContext: alpha");
  if (alpha > 0.0)
    throw std::invalid_argument(
        "KernelContext: alpha must be <= 0 (no condensate branch)");
  KernelContext ctx;
  ctx.alpha = alpha;
  ctx.quad = quad;
  ctx.l0 = moment_l(0, alpha, quad);
  ctx.l1 = moment_l(1, alpha, quad);
  ctx.l2 = moment_l(2, alpha, quad);
  return ctx;
}

/// Kernel of the kinetic equation,
///   K_B(mu, alpha) = ln(1 - e^{alpha - mu^2}) / (2 l_0(alpha)),
/// normalized so that its whole-line integral is 1. Even in mu, positive,
/// and tends to the Maxwellian e^{-mu^2}/sqrt(pi) as alpha -> -inf.
inline double kernel_eval(double mu, const KernelContext& ctx) {
  if (!std::isfinite(mu)) throw NonFiniteInput("kernel_eval: mu");
  if (ctx.alpha == 0.0 && mu == 0.0)
    throw SingularPoint("kernel_eval: logarithmic singularity at mu = 0");
  return detail::log_bose_weight(mu, ctx.alpha) / (2.0 * ctx.l0);
}

}  // namespace kramers
