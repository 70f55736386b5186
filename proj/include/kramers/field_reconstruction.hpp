#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "kramers/neumann.hpp"

namespace kramers {

namespace detail {

// Non-adaptive GK15 sweep over [a, b] in chunks no wider than max_w.
// Deterministic; used where the integrand's oscillation scale is known.
template <class F>
double chunked_gk15(F&& f, double a, double b, double max_w) {
  double s = 0.0;
  double lo = a;
  while (lo < b) {
    const double hi = std::min(lo + max_w, b);
    s += gk15(f, lo, hi).value;
    if (hi >= b) break;
    lo = hi;
  }
  return s;
}

// int_K^inf model(k) cos(kx) dk for x > 0: half-period panels out to
// K2 = K + 160/x (so K2*x - K*x = 160 regardless of x), then two-term
// integration-by-parts closure; the remainder is ~|model''(K2)|/x^2.
inline double tail_cos_integral(const TailFit& f, double K, double x) {
  if (x == 0.0) return f.integral_from(K);
  const double K2 = K + 160.0 / x;
  const double halfp = std::numbers::pi / x;
  auto g = [&](double k) { return f(k) * std::cos(k * x); };
  double s = chunked_gk15(g, K, K2, halfp);
  s += -f(K2) * std::sin(K2 * x) / x - f.deriv(K2) * std::cos(K2 * x) / (x * x);
  return s;
}

// int_K^inf model(k)/(1 + k^2 mu^2) dk: geometric panels to 1024 K plus the
// pure-model remainder damped by the Lorentzian at the endpoint.
inline double tail_lorentz_integral(const TailFit& f, double K, double mu) {
  const double m2 = mu * mu;
  if (K * std::abs(mu) < 1e-3) return f.integral_from(K);
  auto g = [&](double k) { return f(k) / (1.0 + m2 * k * k); };
  double s = 0.0;
  double lo = K;
  for (int i = 0; i < 10; ++i) {
    s += gk15(g, lo, 2.0 * lo).value;
    lo *= 2.0;
  }
  s += f.integral_from(lo) / (1.0 + m2 * lo * lo);
  return s;
}

// int_K^inf model(k) (cos(kx) + k mu sin(kx)) / (1 + k^2 mu^2) dk: the tail
// of the distribution-function inversion, walked on hybrid panels.
inline double tail_h_integral(const TailFit& f, double K, double x,
                              double mu) {
  const double m2 = mu * mu;
  auto g = [&](double k) {
    return f(k) * (std::cos(k * x) + k * mu * std::sin(k * x)) /
           (1.0 + m2 * k * k);
  };
  const double K_far = (x > 0.015) ? K + 500.0 / x : 100.0 * K;
  double s = 0.0;
  double lo = K;
  while (lo < K_far) {
    double w = std::max(0.25 * lo, 1.0);
    if (x > 1e-12) w = std::min(w, std::numbers::pi / x);
    const double hi = std::min(lo + w, K_far);
    s += gk15(g, lo, hi).value;
    lo = hi;
  }
  if (x <= 0.015) s += f.integral_from(K_far) / (1.0 + m2 * K_far * K_far);
  return s;
}

}  // namespace detail

/// I_n(x) = int_0^inf cos(kx) E_n(k) dk: grid part panel-by-panel (chunks no
/// wider than a half period of cos(kx)) plus the fitted ln(k)/k^2 tail
/// integrated against cos(kx).
inline double fourier_cos(const NeumannExpansion& ex, int n, double x) {
  if (!(std::isfinite(x)) || x < 0.0)
    throw std::invalid_argument("fourier_cos: x must be finite and >= 0");
  if (n < 0 || n > ex.order)
    throw std::invalid_argument("fourier_cos: order out of range");
  const SpectralGrid& g = ex.grid;
  const SpectralTable& E = ex.E[n];
  if (x == 0.0) return g.integrate(E.values) + E.tail.integral_from(g.kmax);
  if (x > 200.0) return 0.0;  // Knudsen correction is far below 1e-12 there
  const double halfp = std::numbers::pi / x;
  // ~ kmax * x / pi chunks; guard the budget before walking
  if (g.kmax / halfp > 5e5)
    throw OscillatoryTolerance("fourier_cos: panel budget exceeded");
  double s = 0.0;
  for (std::size_t p = 0; p + 1 < g.edges.size(); ++p) {
    auto f = [&](double k) { return g.eval(E.values, k) * std::cos(k * x); };
    s += detail::chunked_gk15(f, g.edges[p], g.edges[p + 1], halfp);
  }
  return s + detail::tail_cos_integral(E.tail, g.kmax, x);
}

/// Continuous-spectrum velocity correction
///   U_c(x) = sum_n q^n ((2-q)/pi) I_n(x), per unit G_v,
/// truncated at `order` (the built order when order < 0).
inline double knudsen_correction(const NeumannExpansion& ex, double q,
                                 double x, int order = -1) {
  if (q <= 0.0 || q > 1.0)
    throw std::invalid_argument("knudsen_correction: q in (0, 1]");
  if (order < 0) order = ex.order;
  if (order > ex.order)
    throw std::invalid_argument("knudsen_correction: order exceeds built");
  double s = 0.0;
  double qn = 1.0;
  for (int n = 0; n <= order; ++n) {
    s += qn * fourier_cos(ex, n, x);
    qn *= q;
  }
  return s * (2.0 - q) / std::numbers::pi;
}

/// Wall speeds U^(m)(0) = U_sl(q, alpha) + sum_{n<=m} q^n U_c^(n)(0) for
/// m = 0..order. The slip series uses every built order: that reading
/// reproduces the sequence 0.6747, 0.7103, 0.7068 against the exact 0.7071.
inline std::vector<double> wall_values(const NeumannExpansion& ex, double q) {
  const double u_sl = slip_velocity(ex, q).u_sl_over_Gv;
  std::vector<double> out;
  double acc = u_sl;
  double qn = 1.0;
  for (int n = 0; n <= ex.order; ++n) {
    acc += qn * (2.0 - q) / std::numbers::pi * fourier_cos(ex, n, 0.0);
    out.push_back(acc);
    qn *= q;
  }
  return out;
}

/// U(x) = U_sl + x + U_c(x) per unit gradient, tabulated on xs.
struct VelocityProfile {
  std::vector<double> xs;
  std::vector<double> u_total;
  std::vector<double> u_asymptotic;  // U_sl + x
  std::vector<double> u_knudsen;     // U_c(x), < 0 in the Knudsen layer
  double alpha = 0.0;
  double q = 1.0;
  int order = 0;
  double u_sl = 0.0;
};

inline VelocityProfile profile(const NeumannExpansion& ex, double q,
                               std::span<const double> xs, int uc_order = -1) {
  if (uc_order < 0) uc_order = ex.order;
  VelocityProfile vp;
  vp.alpha = ex.alpha();
  vp.q = q;
  vp.order = uc_order;
  vp.u_sl = slip_velocity(ex, q).u_sl_over_Gv;
  for (double x : xs) {
    const double uc = knudsen_correction(ex, q, x, uc_order);
    vp.xs.push_back(x);
    vp.u_asymptotic.push_back(vp.u_sl + x);
    vp.u_knudsen.push_back(uc);
    vp.u_total.push_back(vp.u_sl + x + uc);
  }
  return vp;
}

/// Spectral amplitude of the distribution-function correction,
///   Phi_n(k, mu) = [E_n(k) - U_n|mu| - (|mu|/pi) int E_{n-1}/(1+k1^2 mu^2)]
///                  / (1 + i k mu),
/// with Phi_0's numerator E_0(k) + mu^2 - U_0|mu|. The numerator is real and
/// even in k; the division is the only complex step.
inline std::complex<double> phi_n(const NeumannExpansion& ex, int n, double k,
                                  double mu) {
  if (n < 0 || n > ex.order)
    throw std::invalid_argument("phi_n: order out of range");
  if (!(std::isfinite(k) && std::isfinite(mu)))
    throw NonFiniteInput("phi_n: arguments");
  const double ak = std::abs(k);
  const double am = std::abs(mu);
  const SpectralGrid& g = ex.grid;
  auto Eval = [&](int m, double kk) {
    return kk <= g.kmax ? g.eval(ex.E[m].values, kk) : ex.E[m].tail(kk);
  };
  double num;
  if (n == 0) {
    num = Eval(0, ak) + mu * mu - ex.U[0] * am;
  } else {
    double inner = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j)
      inner += g.weights[j] * ex.E[n - 1].values[j] /
               (1.0 + g.nodes[j] * g.nodes[j] * mu * mu);
    inner += detail::tail_lorentz_integral(ex.E[n - 1].tail, g.kmax, am);
    num = Eval(n, ak) - ex.U[n] * am - am / std::numbers::pi * inner;
  }
  return num / std::complex<double>(1.0, k * mu);
}

/// Distribution-function correction h_c(x, mu) per unit G_v: Fourier
/// inversion of the q-combined spectral amplitudes,
///   h_c = (1/2pi) int e^{ikx} 2(2-q) sum_n q^n Phi_n-numerator/(1+ik mu) dk.
/// Returns {value, imaginary residual}; the residual vanishes by the
/// k <-> -k symmetry and is reported for verification.
inline std::pair<double, double> h_correction_parts(const NeumannExpansion& ex,
                                                    double q, double x,
                                                    double mu,
                                                    int max_order = 2) {
  if (q <= 0.0 || q > 1.0)
    throw std::invalid_argument("h_correction: q in (0, 1]");
  if (x < 0.0) throw std::invalid_argument("h_correction: x >= 0");
  if (!std::isfinite(mu)) throw NonFiniteInput("h_correction: mu");
  const int M = std::min(max_order, ex.order);
  const SpectralGrid& g = ex.grid;
  const double pre = 2.0 * (2.0 - q);
  const double am = std::abs(mu);

  // k-independent part of the numerator (constant in k)
  double B = mu * mu;
  {
    double qn = 1.0;
    for (int n = 0; n <= M; ++n) {
      B -= qn * ex.U[n] * am;
      qn *= q;
    }
    qn = q;
    for (int n = 1; n <= M; ++n) {
      double inner = 0.0;
      for (std::size_t j = 0; j < g.size(); ++j)
        inner += g.weights[j] * ex.E[n - 1].values[j] /
                 (1.0 + g.nodes[j] * g.nodes[j] * mu * mu);
      inner += detail::tail_lorentz_integral(ex.E[n - 1].tail, g.kmax, am);
      B -= qn * am / std::numbers::pi * inner;
      qn *= q;
    }
    B *= pre;
  }

  // combined spectral density A_E(k) = 2(2-q) sum q^n E_n(k) and its tail
  auto A = [&](double k) {
    double s = 0.0;
    double qn = 1.0;
    for (int n = 0; n <= M; ++n) {
      s += qn * g.eval(ex.E[n].values, k);
      qn *= q;
    }
    return pre * s;
  };
  TailFit Afit;
  {
    double qn = 1.0;
    for (int n = 0; n <= M; ++n) {
      Afit.a += pre * qn * ex.E[n].tail.a;
      Afit.b += pre * qn * ex.E[n].tail.b;
      Afit.c += pre * qn * ex.E[n].tail.c;
      qn *= q;
    }
  }

  const double m2 = mu * mu;
  auto re_int = [&](double k) {
    const double ak = std::abs(k);
    return A(ak) * (std::cos(k * x) + k * mu * std::sin(k * x)) /
           (1.0 + m2 * k * k);
  };
  auto im_int = [&](double k) {
    const double ak = std::abs(k);
    return A(ak) * (std::sin(k * x) - k * mu * std::cos(k * x)) /
           (1.0 + m2 * k * k);
  };
  QuadratureSpec hs = ex.ctx.quad;
  hs.abs_tol = std::max(hs.abs_tol, 1e-9);
  hs.max_subdivisions = 4000;
  const double K = g.kmax;
  const double re =
      integrate_finite(re_int, -K, 0.0, hs) + integrate_finite(re_int, 0.0, K, hs);
  const double im =
      integrate_finite(im_int, -K, 0.0, hs) + integrate_finite(im_int, 0.0, K, hs);
  const double tail = 2.0 * detail::tail_h_integral(Afit, K, x, mu);

  double value = (re + tail) / (2.0 * std::numbers::pi);
  // Analytic inversion of the constant numerator: for x > 0 the contour
  // closes upward, so only mu > 0 contributes (2pi/mu) e^{-x/mu}; at x = 0
  // the symmetric value is pi/|mu| for either sign (B vanishes with mu).
  if (x == 0.0) {
    if (mu != 0.0) value += B / (2.0 * am);
  } else if (mu > 0.0) {
    value += B / mu * std::exp(-x / mu);
  }
  const double residual = im / (2.0 * std::numbers::pi);
  return {value, residual};
}

inline double h_correction(const NeumannExpansion& ex, double q, double x,
                           double mu, int max_order = 2) {
  return h_correction_parts(ex, q, x, mu, max_order).first;
}

}  // namespace kramers
