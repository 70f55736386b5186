#pragma once

#include <cmath>
#include <numbers>

#include "kramers/neumann.hpp"

namespace kramers {

// CODATA values; they enter only the number density and SI outputs, never
// the dimensionless results.
inline constexpr double k_boltzmann = 1.380649e-23;   // J/K
inline constexpr double hbar = 1.054571817e-34;       // J s

/// Physical state of the gas. beta = m/(2 k_B T) is the usual inverse
/// thermal-speed-squared; G_v = g_v/nu is the dimensionless gradient.
struct GasParameters {
  double mass = 0.0;            // kg
  double temperature = 0.0;     // K
  double collision_freq = 0.0;  // nu, 1/s
  double spin = 0.0;            // half-integer
  double alpha = 0.0;           // reduced chemical potential, <= 0
  double gradient = 0.0;        // g_v, 1/s

  double beta() const { return mass / (2.0 * k_boltzmann * temperature); }

  void validate() const {
    if (!(mass > 0.0 && temperature > 0.0 && collision_freq > 0.0))
      throw std::invalid_argument(
          "GasParameters: mass, temperature, collision_freq must be > 0");
    if (!(alpha <= 0.0))
      throw std::invalid_argument("GasParameters: alpha must be <= 0");
    if (spin < 0.0)
      throw std::invalid_argument("GasParameters: spin must be >= 0");
  }
};

/// Number density N = -2 pi (2s+1) m^3 l_0(alpha) / ((2 pi hbar)^3 beta^{3/2});
/// positive since l_0 < 0.
inline double number_density(const GasParameters& p, const KernelContext& ctx) {
  p.validate();
  const double b = p.beta();
  const double h3 = std::pow(2.0 * std::numbers::pi * hbar, 3);
  return -2.0 * std::numbers::pi * (2.0 * p.spin + 1.0) *
         std::pow(p.mass, 3) * ctx.l0 / (h3 * std::pow(b, 1.5));
}

/// Dynamic viscosity eta = rho/(nu beta) * l_2/l_0, in Pa s.
inline double viscosity(const GasParameters& p, const KernelContext& ctx) {
  p.validate();
  if (p.alpha != ctx.alpha)
    throw std::invalid_argument("viscosity: ctx.alpha must equal p.alpha");
  const double rho = number_density(p, ctx) * p.mass;
  return rho / (p.collision_freq * p.beta()) * (ctx.l2 / ctx.l0);
}

/// Mean free path l = eta sqrt(pi beta) / rho = sqrt(pi beta)/(nu beta) l_2/l_0.
/// Independent of the number density.
inline double mean_free_path(const GasParameters& p, const KernelContext& ctx) {
  p.validate();
  const double b = p.beta();
  return std::sqrt(std::numbers::pi * b) / (p.collision_freq * b) *
         (ctx.l2 / ctx.l0);
}

/// Slip-series prefactor C(q, alpha) = ((2-q)/q)[U_0 + U_1 q + U_2 q^2 + ...].
inline double slip_prefactor(const NeumannExpansion& ex, double q) {
  return slip_velocity(ex, q).u_sl_over_Gv;
}

/// Isothermal slip coefficient K_v(alpha, q) = C(q, alpha) l_0 / (sqrt(pi) l_2),
/// so that u_sl = K_v * l * g_v.
inline double slip_coefficient_Kv(const KernelContext& ctx, double q,
                                  const NeumannExpansion& ex) {
  if (q == 0.0) throw SpecularLimit("K_v diverges as q -> 0");
  return slip_prefactor(ex, q) * ctx.l0 / (std::sqrt(std::numbers::pi) * ctx.l2);
}

/// Dimensional slip velocity u_sl = K_v * l * g_v, in m/s.
inline double dimensional_slip_velocity(const GasParameters& p,
                                        const KernelContext& ctx,
                                        const NeumannExpansion& ex, double q) {
  p.validate();
  return slip_coefficient_Kv(ctx, q, ex) * mean_free_path(p, ctx) * p.gradient;
}

}  // namespace kramers
