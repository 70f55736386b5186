#pragma once

#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "kramers/spectral_functions.hpp"

namespace kramers {

/// Large-k tail model of a spectral density: (a ln k + b + c/k) / k^2,
/// fitted on the last decade of the grid. Every E_n decays this way
/// (T_2 k^2 -> 1 while T_1 ~ 2 K_B(0) ln k / k^2).
struct TailFit {
  double a = 0.0, b = 0.0, c = 0.0;

  double operator()(double k) const {
    return (a * std::log(k) + b + c / k) / (k * k);
  }
  double deriv(double k) const {
    const double lk = std::log(k);
    return (a - 2.0 * (a * lk + b)) / (k * k * k) - 3.0 * c / (k * k * k * k);
  }
  /// int_K^inf model dk.
  double integral_from(double K) const {
    return (a * (std::log(K) + 1.0) + b) / K + 0.5 * c / (K * K);
  }
};

namespace detail {

// Least-squares fit of (a ln k + b + c/k)/k^2 over grid nodes with
// k >= kmax/10. Normal equations of the 3-parameter linear model for
// y = E(k) k^2 against {ln k, 1, 1/k}.
inline TailFit fit_tail(const SpectralGrid& grid,
                        std::span<const double> values) {
  const double klo = grid.kmax / 10.0;
  double M[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  double r[3] = {0, 0, 0};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double k = grid.nodes[i];
    if (k < klo) continue;
    const double y = values[i] * k * k;
    const double phi[3] = {std::log(k), 1.0, 1.0 / k};
    for (int a = 0; a < 3; ++a) {
      r[a] += phi[a] * y;
      for (int b = 0; b < 3; ++b) M[a][b] += phi[a] * phi[b];
    }
  }
  auto det3 = [](const double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const double d = det3(M);
  TailFit f;
  if (d == 0.0) return f;
  double Ma[3][3];
  double sol[3];
  for (int c = 0; c < 3; ++c) {
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) Ma[a][b] = (b == c) ? r[a] : M[a][b];
    sol[c] = det3(Ma) / d;
  }
  f.a = sol[0];
  f.b = sol[1];
  f.c = sol[2];
  return f;
}

}  // namespace detail

/// One spectral density E_n sampled on the shared grid plus its tail model.
struct SpectralTable {
  std::vector<double> values;
  TailFit tail;
};

/// Ordered Neumann coefficients U_0..U_N and their spectral densities for
/// one alpha. Immutable after build.
struct NeumannExpansion {
  KernelContext ctx;
  SpectralGrid grid;
  std::shared_ptr<const SpectralTables> tables;
  int order = 0;
  std::vector<double> U;
  std::vector<SpectralTable> E;

  double alpha() const { return ctx.alpha; }
};

/// One recursion step: given E_{n-1} on the grid, returns
///   U_n  = -(1/(pi T_1(0))) int T_1(k) E_{n-1}(k) dk,
///   E_n(k_i) = -(1/(pi T_2(k_i))) int S(k_i, k1) E_{n-1}(k1) dk1.
/// U_n is the analytic pole-removal value; it never probes E_n near k = 0.
inline std::pair<double, std::vector<double>> neumann_step(
    const SpectralTables& tb, std::span<const double> Eprev) {
  const std::size_t N = tb.grid.size();
  const double pi = std::numbers::pi;
  double un = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    un += tb.grid.weights[i] * tb.T1v[i] * Eprev[i];
  un *= -1.0 / (pi * tb.Tn0[1]);
  std::vector<double> En(N);
  for (std::size_t i = 0; i < N; ++i) {
    double s = 0.0;
    const double* row = tb.Smat.data() + i * N;
    for (std::size_t j = 0; j < N; ++j)
      s += tb.grid.weights[j] * row[j] * Eprev[j];
    En[i] = -s / (pi * tb.T2v[i]);
  }
  return {un, std::move(En)};
}

/// Builds the expansion through the given order. Each E_n is checked to stay
/// bounded through the removed k = 0 pole.
inline NeumannExpansion build_expansion(const KernelContext& ctx,
                                        const SpectralGrid& grid, int order) {
  if (order < 0 || order > 6)
    throw std::invalid_argument("build_expansion: order must be in [0, 6]");
  NeumannExpansion ex;
  ex.ctx = ctx;
  ex.grid = grid;
  ex.tables = std::make_shared<const SpectralTables>(
      SpectralTables::build(ctx, grid));
  ex.order = order;
  const SpectralTables& tb = *ex.tables;

  ex.U.push_back(tb.U0());
  ex.E.push_back({tb.E0v, detail::fit_tail(grid, tb.E0v)});

  auto check_bounded = [&](const std::vector<double>& v, int n) {
    const double near0 = std::abs(grid.eval(v, 1e-3));
    const double at1 = std::abs(grid.eval(v, 1.0));
    if (near0 > 1e3 * std::max(at1, 1e-300))
      throw GridTooCoarse("E_" + std::to_string(n) +
                          " unbounded near k = 0; refine the grid");
  };
  check_bounded(ex.E[0].values, 0);

  for (int n = 1; n <= order; ++n) {
    auto [un, en] = neumann_step(tb, ex.E[n - 1].values);
    check_bounded(en, n);
    ex.U.push_back(un);
    ex.E.push_back({std::move(en), TailFit{}});
    ex.E[n].tail = detail::fit_tail(grid, ex.E[n].values);
  }
  return ex;
}

/// Dimensionless slip velocity per unit gradient, with the per-order
/// breakdown. All values are "per unit G_v"; dimensional scaling happens in
/// the dimensional module.
struct SlipResult {
  double alpha = 0.0;
  double q = 1.0;
  int order = 0;
  double u_sl_over_Gv = 0.0;
  std::vector<double> per_order;  // ((2-q)/q) U_n q^n, summing to u_sl
  std::optional<double> exact_V1;
  std::optional<std::vector<double>> rel_error_percent;
};

/// u_sl/G_v = ((2 - q)/q) sum_n U_n q^n truncated at the built order.
inline SlipResult slip_velocity(const NeumannExpansion& ex, double q) {
  if (!std::isfinite(q)) throw NonFiniteInput("slip_velocity: q");
  if (q == 0.0)
    throw SpecularLimit("slip velocity diverges as q -> 0");
  if (q < 0.0 || q > 1.0)
    throw std::invalid_argument("slip_velocity: q must be in (0, 1]");
  SlipResult r;
  r.alpha = ex.alpha();
  r.q = q;
  r.order = ex.order;
  const double pre = (2.0 - q) / q;
  double qn = 1.0;
  for (int n = 0; n <= ex.order; ++n) {
    r.per_order.push_back(pre * ex.U[n] * qn);
    r.u_sl_over_Gv += r.per_order.back();
    qn *= q;
  }
  return r;
}

/// Relative errors O_n = (V_1 - sum_{m<=n} U_m)/V_1 in percent, for q = 1
/// where the (2-q)/q prefactor is 1.
inline std::vector<double> relative_error(const NeumannExpansion& ex,
                                          double exact_V1) {
  std::vector<double> out;
  double partial = 0.0;
  for (int n = 0; n <= ex.order; ++n) {
    partial += ex.U[n];
    out.push_back(100.0 * (exact_V1 - partial) / exact_V1);
  }
  return out;
}

/// Attaches the exact benchmark and per-order errors to a slip result.
inline SlipResult with_benchmark(SlipResult r, const NeumannExpansion& ex,
                                 double exact_V1) {
  r.exact_V1 = exact_V1;
  r.rel_error_percent = relative_error(ex, exact_V1);
  return r;
}

}  // namespace kramers
