#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "kramers/exact_solution.hpp"
#include "kramers/field_reconstruction.hpp"

namespace kramers {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace detail {

inline CheckResult check(const std::string& name, double worst, double tol) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "max deviation %.3e (tol %.1e)", worst, tol);
  return {name, worst < tol, buf};
}

}  // namespace detail

/// The always-runnable invariant battery: every check is independent of the
/// headline table numbers. Returns one result per property.
inline std::vector<CheckResult> run_property_suite() {
  std::vector<CheckResult> out;
  QuadratureSpec spec;

  // kernel normalization at 7 alpha values
  {
    double worst = 0.0;
    for (double a : {0.0, -0.5, -1.0, -2.0, -5.0, -10.0, -30.0}) {
      auto ctx = KernelContext::make(a, spec);
      auto f = [&](double t) { return kernel_eval(t, ctx); };
      const double norm = 2.0 * detail::integrate_kernel_decay(f, spec);
      worst = std::max(worst, std::abs(norm - 1.0));
    }
    out.push_back(detail::check("kernel normalization (7 alphas)", worst, 1e-8));
  }

  // moment quadrature vs polylogarithm series oracle
  {
    double worst = 0.0;
    for (double a : {0.0, -1.0, -5.0})
      for (int n : {0, 1, 2}) {
        const double q = moment_l(n, a, spec);
        const double s = moment_l_series(n, a);
        worst = std::max(worst, std::abs(q - s) / std::abs(q));
      }
    out.push_back(detail::check("moment oracle equivalence", worst, 1e-10));
  }

  // L(k) = k^2 T_2(k) against the defining form, and descent identities
  {
    auto ctx = KernelContext::make(-1.0, spec);
    double worst = 0.0;
    for (double k : {0.1, 1.0, 10.0}) {
      auto f = [&](double t) {
        return kernel_eval(t, ctx) / (1.0 + k * k * t * t);
      };
      const double direct = 1.0 - 2.0 * detail::integrate_kernel_decay(f, spec);
      worst = std::max(worst, std::abs(L(k, ctx) - direct));
    }
    for (double k : {0.5, 1.0, 2.0}) {
      worst = std::max(worst, std::abs(T(3, k, ctx) -
                                       (T(1, 0, ctx) - T(1, k, ctx)) / (k * k)));
      worst = std::max(worst, std::abs(T(4, k, ctx) -
                                       (T(2, 0, ctx) - T(2, k, ctx)) / (k * k)));
    }
    out.push_back(detail::check("L = k^2 T_2 and descent identities", worst, 1e-8));
  }

  // k^2 S(k,k1) = J(k,k1) - T_1(k) T_1(k1)/T_1(0) at 3 node pairs
  {
    auto ctx = KernelContext::make(-1.0, spec);
    double worst = 0.0;
    const double t10 = T(1, 0.0, ctx);
    for (auto [k, k1] : {std::pair{0.5, 0.5}, {1.0, 2.0}, {3.0, 0.2}}) {
      const double lhs = k * k * S(k, k1, ctx);
      const double rhs = J(k, k1, ctx) - T(1, k, ctx) * T(1, k1, ctx) / t10;
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    out.push_back(detail::check("k^2 S = J - T1 T1 / T1(0)", worst, 1e-8));
  }

  // E_n bounded through k = 0 for n <= 3
  {
    auto ctx = KernelContext::make(-1.0, spec);
    auto ex = build_expansion(ctx, SpectralGrid::make(), 3);
    double worst = 0.0;
    for (int n = 0; n <= 3; ++n) {
      const double near0 = ex.grid.eval(ex.E[n].values, 1e-3);
      const double mid = ex.grid.eval(ex.E[n].values, 1e-2);
      worst = std::max(worst, std::abs(near0 - mid) / std::abs(mid));
    }
    out.push_back(detail::check("E_n bounded through k = 0 (n <= 3)", worst, 0.1));
  }

  // classical limit: sup |K_B(mu, -30) - Maxwellian| on [0, 3]
  {
    auto ctx = KernelContext::make(-30.0, spec);
    double worst = 0.0;
    for (int i = 0; i <= 300; ++i) {
      const double mu = 0.01 * i;
      const double maxw = std::exp(-mu * mu) / std::sqrt(std::numbers::pi);
      const double kb = (mu == 0.0)
                            ? kernel_eval(1e-12, ctx)
                            : kernel_eval(mu, ctx);
      worst = std::max(worst, std::abs(kb - maxw));
    }
    out.push_back(detail::check("classical limit sup-norm (alpha = -30)", worst, 1e-9));
  }

  // Fourier-reconstruction closure at 5 x values
  {
    auto ctx = KernelContext::make(-30.0, spec);
    auto ex = build_expansion(ctx, SpectralGrid::make(), 2);
    QuadratureSpec cs;
    cs.abs_tol = cs.rel_tol = 1e-8;
    double worst = 0.0;
    for (double x : {0.0, 0.25, 0.5, 1.0, 2.0}) {
      auto f = [&](double mu) {
        return kernel_eval(mu, ctx) * h_correction(ex, 1.0, x, mu, 2);
      };
      const double lhs = 0.5 * (integrate_finite(f, -8.0, 0.0, cs) +
                                integrate_finite(f, 0.0, 8.0, cs));
      const double rhs = knudsen_correction(ex, 1.0, x, 2);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    out.push_back(detail::check("mass-velocity closure (5 x values)", worst, 1e-4));
  }

  // refinement stability: headline numbers move < tolerance/5 under a
  // doubled grid (U_n tol 5e-4, V_1 tol 1e-3)
  {
    double worst_u = 0.0, worst_v = 0.0;
    for (double a : {0.0, -1.0}) {
      auto ctx = KernelContext::make(a, spec);
      auto e1 = build_expansion(ctx, SpectralGrid::make(200, 200.0), 2);
      auto e2 = build_expansion(ctx, SpectralGrid::make(400, 400.0), 2);
      for (int n = 0; n <= 2; ++n)
        worst_u = std::max(worst_u, std::abs(e1.U[n] - e2.U[n]));
      worst_v = std::max(worst_v, std::abs(V1(ctx, 400) - V1(ctx, 800)));
    }
    out.push_back(detail::check("refinement stability: U_n under doubled grid",
                                worst_u, 5e-4 / 5.0));
    out.push_back(detail::check("refinement stability: V_1 under doubled grid",
                                worst_v, 1e-3 / 5.0));
  }

  return out;
}

}  // namespace kramers
