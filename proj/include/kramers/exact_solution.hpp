#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "kramers/bose_kernel.hpp"

namespace kramers {

namespace detail {

// Integral of K_B(t)/(t - tau) over [lo, hi], splitting at t = 0 where the
// alpha = 0 kernel has its logarithmic point so no quadrature node can land
// on it.
template <class F>
double integrate_split_at_zero(F&& f, double lo, double hi,
                               const QuadratureSpec& spec) {
  if (lo < 0.0 && 0.0 < hi)
    return integrate_finite(f, lo, 0.0, spec) +
           integrate_finite(f, 0.0, hi, spec);
  return integrate_finite(f, lo, hi, spec);
}

}  // namespace detail

/// Dispersion function lambda(tau, alpha) = 1 + tau PV int K_B(t)/(t - tau) dt
/// on the real axis. Positive at small tau, a single sign change, and
/// ~ -<t^2>/tau^2 at large tau.
inline double dispersion_lambda(double tau, const KernelContext& ctx) {
  if (!std::isfinite(tau)) throw NonFiniteInput("dispersion_lambda: tau");
  if (!(tau > 0.0))
    throw std::invalid_argument("dispersion_lambda: tau must be > 0");
  const QuadratureSpec& spec = ctx.quad;
  const double w = spec.pv_window;
  const double upper = std::max(8.0, tau + w + 2.0);
  const double lower = -8.0;
  if (tau + w + 1.0 > 1e6)
    throw PoleTooCloseToBoundary("dispersion_lambda: tau too large");

  auto K = [&](double t) { return kernel_eval(t, ctx); };
  const double Ktau = K(tau);
  const double h = 1e-6;
  const double dK = (K(tau + h) - K(tau - h)) / (2.0 * h);
  auto sub = [&](double t) {
    const double d = t - tau;
    if (std::abs(d) < h) return dK;
    return (K(t) - Ktau) / d;
  };
  double pv = detail::integrate_split_at_zero(sub, tau - w, tau + w, spec);
  auto pole = [&](double t) { return K(t) / (t - tau); };
  pv += detail::integrate_split_at_zero(pole, lower, tau - w, spec);
  pv += detail::integrate_split_at_zero(pole, tau + w, upper, spec);
  return 1.0 + tau * pv;
}

/// Boundary phase theta(tau, alpha) = arccot[lambda/(pi tau K_B(tau))] with
/// the single branch mapping R onto (0, pi): arccot(+inf) = 0,
/// arccot(-inf) = pi. This yields theta(0+) = 0 and theta(inf) = pi without
/// unwrapping, the unique zero of lambda passing theta through pi/2.
inline double theta(double tau, const KernelContext& ctx) {
  const double lam = dispersion_lambda(tau, ctx);
  const double Kt = kernel_eval(tau, ctx);  // may underflow to 0 at large tau
  const double ratio = lam / (std::numbers::pi * tau * Kt);
  if (std::isnan(ratio)) return lam >= 0.0 ? 0.0 : std::numbers::pi;
  return std::atan2(1.0, ratio);
}

/// Location of the single sign change of lambda on (0, inf), by bisection.
inline double lambda_zero_crossing(const KernelContext& ctx) {
  double a = 0.05, b = 6.0;
  double fa = dispersion_lambda(a, ctx);
  double fb = dispersion_lambda(b, ctx);
  while (fa * fb > 0.0 && b < 50.0) {
    b *= 2.0;
    fb = dispersion_lambda(b, ctx);
  }
  if (fa * fb > 0.0)
    throw BranchDiscontinuity("lambda_zero_crossing: no sign change found");
  for (int i = 0; i < 80 && (b - a) > 1e-13 * b; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = dispersion_lambda(m, ctx);
    if (fa * fm <= 0.0) {
      b = m;
      fb = fm;
    } else {
      a = m;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

/// theta(tau) sampled on a tau-grid dense near 0 and near lambda's zero
/// crossing, with quadrature weights for the V_1 integral.
struct PhaseCurve {
  double alpha = 0.0;
  double tau_max = 12.0;
  double lambda_zero = 0.0;
  std::vector<double> taus, weights, thetas;

  static PhaseCurve build(const KernelContext& ctx, int target_nodes = 400,
                          double tau_max = 12.0);
};

inline PhaseCurve PhaseCurve::build(const KernelContext& ctx, int target_nodes,
                                    double tau_max) {
  if (target_nodes < 64 || !(tau_max > 4.0))
    throw std::invalid_argument("PhaseCurve: need >= 64 nodes, tau_max > 4");
  PhaseCurve pc;
  pc.alpha = ctx.alpha;
  pc.tau_max = tau_max;
  pc.lambda_zero = lambda_zero_crossing(ctx);
  const double z0 = pc.lambda_zero;

  std::vector<double> edges{0.0,  0.005, 0.012, 0.03, 0.07,
                            0.15, 0.3,   0.5};
  auto push_if = [&](double e) {
    if (e > edges.back() + 1e-3 && e < tau_max - 1e-3) edges.push_back(e);
  };
  push_if(z0 - 0.2);
  push_if(z0 - 0.05);
  push_if(z0 + 0.05);
  push_if(z0 + 0.2);
  push_if(z0 + 0.6);
  for (double e = 2.0; e < tau_max; e += (e < 4.0 ? 0.8 : 1.6)) push_if(e);
  edges.push_back(tau_max);

  const int per_panel = 16;
  while (static_cast<int>(edges.size() - 1) * per_panel < target_nodes) {
    // bisect the widest panel; leftmost wins ties
    std::size_t widest = 0;
    double wmax = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      const double wdt = edges[i + 1] - edges[i];
      if (wdt > wmax + 1e-15) {
        wmax = wdt;
        widest = i;
      }
    }
    edges.insert(edges.begin() + widest + 1,
                 0.5 * (edges[widest] + edges[widest + 1]));
  }

  const auto& xs = detail::gl16_nodes();
  const auto& ws = detail::gl16_weights();
  for (int attempt = 0;; ++attempt) {
    pc.taus.clear();
    pc.weights.clear();
    pc.thetas.clear();
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
      const double c = 0.5 * (edges[p] + edges[p + 1]);
      const double hw = 0.5 * (edges[p + 1] - edges[p]);
      for (std::size_t j = 0; j < xs.size(); ++j) {
        pc.taus.push_back(c + hw * xs[j]);
        pc.weights.push_back(hw * ws[j]);
      }
    }
    for (double t : pc.taus) pc.thetas.push_back(theta(t, ctx));

    // Continuity invariant: no jump above pi/2 between adjacent nodes.
    double bad = -1.0;
    for (std::size_t i = 0; i + 1 < pc.thetas.size(); ++i)
      if (std::abs(pc.thetas[i + 1] - pc.thetas[i]) >
          0.5 * std::numbers::pi) {
        bad = pc.taus[i];
        break;
      }
    if (bad < 0.0) break;
    if (attempt >= 3)
      throw BranchDiscontinuity("PhaseCurve: theta jump persists near tau = " +
                                std::to_string(bad));
    std::vector<double> refined{edges.front()};
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      if (edges[i] <= bad && bad <= edges[i + 1])
        refined.push_back(0.5 * (edges[i] + edges[i + 1]));
      refined.push_back(edges[i + 1]);
    }
    edges = std::move(refined);
  }
  return pc;
}

/// Exact slip coefficient V_1(alpha) = -(1/pi) int_0^inf (theta - pi) dtau.
/// The tail beyond tau_max uses the asymptotic zeta ~ -pi tau^3 K_B/T_2(0)
/// (Gaussian-fast; it is below 1e-50 for tau_max = 12).
inline double V1(const PhaseCurve& pc, const KernelContext& ctx) {
  double s = 0.0;
  for (std::size_t i = 0; i < pc.taus.size(); ++i)
    s += pc.weights[i] * (pc.thetas[i] - std::numbers::pi);
  double v = -s / std::numbers::pi;
  const double t2_0 = ctx.l2 / ctx.l0;  // T_2(0)
  auto tail_f = [&](double t) { return t * t * t * kernel_eval(t, ctx); };
  v += integrate_finite(tail_f, pc.tau_max, pc.tau_max + 20.0, ctx.quad) /
       t2_0;
  return v;
}

inline double V1(const KernelContext& ctx, int target_nodes = 400,
                 double tau_max = 12.0) {
  return V1(PhaseCurve::build(ctx, target_nodes, tau_max), ctx);
}

/// Exact wall speed U(0, alpha) = sqrt(l_2/l_0) per unit G_v; both moments
/// are negative, the ratio positive. Equals 1/sqrt(2) as alpha -> -inf.
inline double exact_wall_speed(const KernelContext& ctx) {
  return std::sqrt(ctx.l2 / ctx.l0);
}

}  // namespace kramers
