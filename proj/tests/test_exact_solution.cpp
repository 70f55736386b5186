#include <catch2/catch.hpp>

#include <cmath>
#include <numbers>

#include "kramers/exact_solution.hpp"
#include "kramers/neumann.hpp"

using namespace kramers;
namespace num = std::numbers;

namespace {
const QuadratureSpec spec;
const KernelContext& ctx_m30() {
  static const auto c = KernelContext::make(-30.0, spec);
  return c;
}
}  // namespace

TEST_CASE("dispersion function shape", "[exact]") {
  CHECK(dispersion_lambda(1e-6, ctx_m30()) == Approx(1.0).margin(1e-5));
  // large-tau expansion lambda ~ -<t^2>/tau^2 < 0
  CHECK(dispersion_lambda(5.0, ctx_m30()) < 0.0);
  const double t2 = ctx_m30().l2 / ctx_m30().l0;
  CHECK(dispersion_lambda(8.0, ctx_m30()) ==
        Approx(-t2 / 64.0).epsilon(0.05));

  // exactly one sign change on (0, inf): brute-force scan
  for (double a : {0.0, -5.0, -30.0}) {
    auto ctx = KernelContext::make(a, spec);
    int changes = 0;
    double prev = dispersion_lambda(0.02, ctx);
    for (double tau = 0.06; tau <= 8.0; tau += 0.04) {
      const double cur = dispersion_lambda(tau, ctx);
      if (prev * cur < 0.0) ++changes;
      prev = cur;
    }
    CHECK(changes == 1);
  }
}

TEST_CASE("phase limits and branch", "[exact]") {
  const double z0 = lambda_zero_crossing(ctx_m30());
  CHECK(theta(z0, ctx_m30()) == Approx(num::pi / 2).margin(1e-5));
  CHECK(theta(1e-3, ctx_m30()) < 0.05);
  CHECK(theta(20.0, ctx_m30()) > num::pi - 0.05);
  CHECK(theta(12.0, ctx_m30()) <= num::pi);
}

TEST_CASE("explicit ratio display agrees with lambda/(pi tau K)", "[exact]") {
  // the arccot argument written out as a single PV integral of
  // x ln(1 - e^{alpha - x^2}) over (x - tau), normalized by tau ln(...)
  for (auto [tau, a] : {std::pair{0.5, -1.0}, {1.0, -5.0}, {2.0, -1.0}}) {
    auto ctx = KernelContext::make(a, spec);
    const double primary =
        dispersion_lambda(tau, ctx) /
        (num::pi * tau * kernel_eval(tau, ctx));
    auto f = [&](double x) { return x * std::log1p(-std::exp(a - x * x)); };
    const double pv = principal_value(f, tau, spec);
    const double display =
        pv / (num::pi * tau * std::log1p(-std::exp(a - tau * tau)));
    CHECK(primary == Approx(display).margin(1e-6));
  }
}

TEST_CASE("phase curve invariants", "[exact]") {
  auto pc = PhaseCurve::build(ctx_m30());
  REQUIRE(pc.taus.size() >= 400);
  for (std::size_t i = 0; i + 1 < pc.thetas.size(); ++i) {
    CHECK(std::abs(pc.thetas[i + 1] - pc.thetas[i]) < num::pi / 2);
    CHECK(pc.thetas[i] >= 0.0);
    CHECK(pc.thetas[i] <= num::pi);
  }
  CHECK(pc.thetas.front() < 0.1);
  CHECK(pc.thetas.back() > num::pi - 1e-6);
}

TEST_CASE("exact slip coefficient", "[exact]") {
  CHECK(V1(ctx_m30()) == Approx(1.0162).margin(1e-3));
  // derived from the error tables: V_1(0) = U_0(0)/(1 - 0.1801)
  auto ctx0 = KernelContext::make(0.0, spec);
  CHECK(V1(ctx0) == Approx(0.8815).margin(3e-3));

  // synthetic phase with theta == pi gives zero
  PhaseCurve pc = PhaseCurve::build(ctx_m30());
  for (double& t : pc.thetas) t = num::pi;
  CHECK(V1(pc, ctx_m30()) == Approx(0.0).margin(1e-12));

  // refinement: doubling the tau-grid density
  CHECK(std::abs(V1(ctx_m30(), 400) - V1(ctx_m30(), 800)) < 2e-4);
}

TEST_CASE("V_1 dominates U_0", "[exact]") {
  for (double a : {0.0, -1.0, -4.0, -8.0, -30.0}) {
    auto ctx = KernelContext::make(a, spec);
    CHECK(V1(ctx) > moment_l(2, ctx) / moment_l(1, ctx));
  }
}

TEST_CASE("exact wall speed", "[exact]") {
  CHECK(exact_wall_speed(ctx_m30()) == Approx(1.0 / std::sqrt(2.0)).margin(1e-4));
  // sqrt(zeta(5/2)/(2 zeta(3/2))) from the polylog oracle
  auto ctx0 = KernelContext::make(0.0, spec);
  const double oracle =
      std::sqrt(polylog_exp(2.5, 0.0) / (2.0 * polylog_exp(1.5, 0.0)));
  CHECK(exact_wall_speed(ctx0) == Approx(oracle).margin(1e-6));
  CHECK(exact_wall_speed(ctx0) == Approx(0.50671).margin(1e-4));

  // l2/l0 approaches 1/2 monotonically from below as alpha -> -inf; the
  // series oracle resolves the ~e^alpha-sized gap the quadrature tolerance
  // cannot.
  double prev = 0.0;
  for (double a : {-5.0, -10.0, -20.0, -30.0}) {
    const double r = moment_l_series(2, a) / moment_l_series(0, a);
    CHECK(r > prev);
    CHECK(r <= 0.5);
    prev = r;
  }
}
