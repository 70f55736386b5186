#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "kramers/detail/gauss.hpp"
#include "kramers/errors.hpp"

namespace kramers {

/// Discretization of the k-integrals: panels [0, k_inner] then geometric up
/// to k_max, 8-point Gauss-Legendre nodes per panel. Nodes are dense near
/// zero, where the spectral densities have their strongest curvature once
/// the k = 0 pole is removed. Weights integrate smooth functions over
/// [0, k_max]; tails beyond k_max are handled by the fitted ln(k)/k^2 model.
struct SpectralGrid {
  std::vector<double> edges;    // panel boundaries, edges.front() == 0
  std::vector<double> nodes;    // strictly increasing, in (0, k_max)
  std::vector<double> weights;  // quadrature weights for int_0^{k_max}
  double kmax = 0.0;
  int per_panel = 8;

  static SpectralGrid make(int target_nodes = 200, double kmax = 200.0,
                           double k_inner = 1e-3) {
    if (target_nodes < 16)
      throw std::invalid_argument("SpectralGrid: need at least 16 nodes");
    if (!(kmax > 1.0) || !(k_inner > 0.0) || !(k_inner < 1.0))
      throw std::invalid_argument("SpectralGrid: bad kmax/k_inner");
    SpectralGrid g;
    g.kmax = kmax;
    const int npanels = std::max(4, target_nodes / g.per_panel);
    g.edges.push_back(0.0);
    g.edges.push_back(k_inner);
    const int ngeo = npanels - 1;
    const double ratio = std::pow(kmax / k_inner, 1.0 / ngeo);
    double e = k_inner;
    for (int i = 1; i < ngeo; ++i) {
      e *= ratio;
      g.edges.push_back(e);
    }
    g.edges.push_back(kmax);
    const auto& xs = detail::gl8_nodes();
    const auto& ws = detail::gl8_weights();
    for (std::size_t p = 0; p + 1 < g.edges.size(); ++p) {
      const double a = g.edges[p], b = g.edges[p + 1];
      const double c = 0.5 * (a + b), h = 0.5 * (b - a);
      for (std::size_t j = 0; j < xs.size(); ++j) {
        g.nodes.push_back(c + h * xs[j]);
        g.weights.push_back(h * ws[j]);
      }
    }
    return g;
  }

  std::size_t size() const { return nodes.size(); }
  std::size_t panel_count() const { return edges.size() - 1; }

  /// Weighted sum: integral over [0, kmax] of the tabulated function.
  double integrate(std::span<const double> values) const {
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += weights[i] * values[i];
    return s;
  }

  std::size_t panel_of(double k) const {
    if (!(k >= 0.0 && k <= kmax))
      throw std::invalid_argument("SpectralGrid::panel_of: k outside [0,kmax]");
    std::size_t lo = 0, hi = panel_count() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi + 1) / 2;
      if (k >= edges[mid])
        lo = mid;
      else
        hi = mid - 1;
    }
    return lo;
  }

  /// Barycentric evaluation of a tabulated function at arbitrary k in
  /// [0, kmax], using the 8 Gauss-Legendre samples of k's panel.
  double eval(std::span<const double> values, double k) const {
    const std::size_t p = panel_of(k);
    const double a = edges[p], b = edges[p + 1];
    const double x = (2.0 * k - a - b) / (b - a);  // reference coordinate
    const auto& xs = detail::gl8_nodes();
    static const std::vector<double> bw = detail::barycentric_weights(
        detail::gl8_nodes());
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const double d = x - xs[j];
      if (std::abs(d) < 1e-14) return values[p * xs.size() + j];
      const double t = bw[j] / d;
      num += t * values[p * xs.size() + j];
      den += t;
    }
    return num / den;
  }
};

}  // namespace kramers
