#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "kramers/bose_kernel.hpp"
#include "kramers/spectral_grid.hpp"

namespace kramers {

namespace detail {

// Fixed composite Gauss-Legendre rule on t in [0, 8] with panels refined
// geometrically toward t = 0, caching w * K_B(t) * t^n. Resolves the
// Lorentzian 1/(1 + k^2 t^2) down to scale 1/k_res; kernel values beyond
// t = 8 are below 1e-27 of the peak for every alpha <= 0.
struct KernelMomentRule {
  std::vector<double> t;
  std::array<std::vector<double>, 6> p;  // p[n][m] = w_m K(t_m) t_m^n

  static KernelMomentRule make(const KernelContext& ctx, double k_res) {
    KernelMomentRule r;
    int j0 = -10;
    while (std::ldexp(1.0, j0) > 0.25 / std::max(k_res, 1.0)) --j0;
    std::vector<double> edges{0.0};
    for (int j = j0; j <= 3; ++j) edges.push_back(std::ldexp(1.0, j));
    const auto& xs = gl16_nodes();
    const auto& ws = gl16_weights();
    for (std::size_t q = 0; q + 1 < edges.size(); ++q) {
      const double c = 0.5 * (edges[q] + edges[q + 1]);
      const double h = 0.5 * (edges[q + 1] - edges[q]);
      for (std::size_t m = 0; m < xs.size(); ++m) {
        const double tm = c + h * xs[m];
        const double wk = h * ws[m] * kernel_eval(tm, ctx);
        r.t.push_back(tm);
        double tn = 1.0;
        for (int n = 0; n < 6; ++n) {
          r.p[n].push_back(wk * tn);
          tn *= tm;
        }
      }
    }
    return r;
  }

  // T_n(k) = 2 int_0^inf K_B(t) t^n / (1 + k^2 t^2) dt
  double tn(int n, double k) const {
    const double k2 = k * k;
    double s = 0.0;
    for (std::size_t m = 0; m < t.size(); ++m)
      s += p[n][m] / (1.0 + k2 * t[m] * t[m]);
    return 2.0 * s;
  }

  // J_n(k, k1) with the double Lorentzian weight, n = 1 gives J, n = 5 J_5.
  double jn(int n, double k, double k1) const {
    const double k2 = k * k, k12 = k1 * k1;
    double s = 0.0;
    for (std::size_t m = 0; m < t.size(); ++m) {
      const double t2 = t[m] * t[m];
      s += p[n][m] / ((1.0 + k2 * t2) * (1.0 + k12 * t2));
    }
    return 2.0 * s;
  }
};

}  // namespace detail

/// T_n(k) = 2 int_0^inf K_B(t, alpha) t^n / (1 + k^2 t^2) dt, n = 0..5.
/// Even in k: the implementation takes |k|. Adaptive one-off evaluation.
inline double T(int n, double k, const KernelContext& ctx) {
  if (n < 0 || n > 5) throw std::invalid_argument("T: n must be in {0,...,5}");
  if (!std::isfinite(k)) throw NonFiniteInput("T: k");
  const double k2 = k * k;
  auto f = [&](double t) {
    return kernel_eval(t, ctx) * std::pow(t, n) / (1.0 + k2 * t * t);
  };
  return 2.0 * detail::integrate_kernel_decay(f, ctx.quad);
}

/// L(k) = 1 - int K_B/(1 + k^2 t^2) dt, computed in the algebraically
/// equivalent pole-explicit form k^2 T_2(k).
inline double L(double k, const KernelContext& ctx) {
  return k * k * T(2, k, ctx);
}

/// J(k, k1) = 2 int_0^inf K_B t dt / ((1 + k^2 t^2)(1 + k1^2 t^2)).
/// Symmetric in (k, k1); J(k, 0) = T_1(k).
inline double J(double k, double k1, const KernelContext& ctx) {
  if (!(std::isfinite(k) && std::isfinite(k1)))
    throw NonFiniteInput("J: arguments");
  const double k2 = k * k, k12 = k1 * k1;
  auto f = [&](double t) {
    const double t2 = t * t;
    return kernel_eval(t, ctx) * t / ((1.0 + k2 * t2) * (1.0 + k12 * t2));
  };
  return 2.0 * detail::integrate_kernel_decay(f, ctx.quad);
}

/// J_5(k, k1): as J but with weight t^5.
inline double J5(double k, double k1, const KernelContext& ctx) {
  if (!(std::isfinite(k) && std::isfinite(k1)))
    throw NonFiniteInput("J5: arguments");
  const double k2 = k * k, k12 = k1 * k1;
  auto f = [&](double t) {
    const double t2 = t * t;
    return kernel_eval(t, ctx) * t * t2 * t2 /
           ((1.0 + k2 * t2) * (1.0 + k12 * t2));
  };
  return 2.0 * detail::integrate_kernel_decay(f, ctx.quad);
}

/// Regularized coupling kernel S(k, k1) = k1^2 [J_5 - T_3(k) T_3(k1)/T_1(0)].
/// Satisfies J(k, k1) - T_1(k) T_1(k1)/T_1(0) = k^2 S(k, k1); S(k, 0) = 0.
inline double S(double k, double k1, const KernelContext& ctx) {
  if (k1 == 0.0) return 0.0;
  return k1 * k1 *
         (J5(k, k1, ctx) - T(3, k, ctx) * T(3, k1, ctx) / T(1, 0.0, ctx));
}

/// phi_0(k) = (T_2(0) T_3(k) - T_1(0) T_4(k)) / T_1(0): the numerator of the
/// zeroth spectral density with the k = 0 pole cancelled analytically.
inline double phi0(double k, const KernelContext& ctx) {
  return (T(2, 0.0, ctx) * T(3, k, ctx) - T(1, 0.0, ctx) * T(4, k, ctx)) /
         T(1, 0.0, ctx);
}

/// E_0(k) = phi_0(k)/T_2(k); finite at k = 0 and equal to
/// (T_2(k) - U_0 T_1(k))/L(k) for k > 0.
inline double E0(double k, const KernelContext& ctx) {
  return phi0(k, ctx) / T(2, k, ctx);
}

/// Everything the order-by-order recursion needs, precomputed once per
/// (alpha, grid): T_n at the grid nodes and at k = 0, plus the full
/// S(k_i, k_j) tensor. Immutable after build; reads are thread-safe.
struct SpectralTables {
  KernelContext ctx;
  SpectralGrid grid;
  detail::KernelMomentRule rule;
  std::array<double, 6> Tn0{};             // T_n(0)
  std::vector<double> T1v, T2v, T3v, T4v;  // on grid nodes
  std::vector<double> phi0v, E0v;
  std::vector<double> Smat;  // row-major: S[i * size + j] = S(k_i, k_j)

  double U0() const { return Tn0[2] / Tn0[1]; }
  double s_at(std::size_t i, std::size_t j) const {
    return Smat[i * grid.size() + j];
  }

  static SpectralTables build(const KernelContext& ctx,
                              const SpectralGrid& grid) {
    SpectralTables tb;
    tb.ctx = ctx;
    tb.grid = grid;
    tb.rule = detail::KernelMomentRule::make(ctx, grid.kmax);
    for (int n = 0; n < 6; ++n) tb.Tn0[n] = tb.rule.tn(n, 0.0);
    const std::size_t N = grid.size();
    tb.T1v.resize(N);
    tb.T2v.resize(N);
    tb.T3v.resize(N);
    tb.T4v.resize(N);
    tb.phi0v.resize(N);
    tb.E0v.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
      const double k = grid.nodes[i];
      tb.T1v[i] = tb.rule.tn(1, k);
      tb.T2v[i] = tb.rule.tn(2, k);
      tb.T3v[i] = tb.rule.tn(3, k);
      tb.T4v[i] = tb.rule.tn(4, k);
      tb.phi0v[i] =
          (tb.Tn0[2] * tb.T3v[i] - tb.Tn0[1] * tb.T4v[i]) / tb.Tn0[1];
      tb.E0v[i] = tb.phi0v[i] / tb.T2v[i];
    }
    // S(k_i, k_j) = k_j^2 [J_5(k_i, k_j) - T_3(k_i) T_3(k_j)/T_1(0)]; the
    // bracket is symmetric, so only the upper triangle of J_5 is computed.
    tb.Smat.assign(N * N, 0.0);
    for (std::size_t i = 0; i < N; ++i) {
      const double ki = grid.nodes[i];
      for (std::size_t j = i; j < N; ++j) {
        const double kj = grid.nodes[j];
        const double bracket = tb.rule.jn(5, ki, kj) -
                               tb.T3v[i] * tb.T3v[j] / tb.Tn0[1];
        tb.Smat[i * N + j] = kj * kj * bracket;
        tb.Smat[j * N + i] = ki * ki * bracket;
      }
    }
    return tb;
  }
};

}  // namespace kramers
