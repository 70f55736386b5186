#include <catch2/catch.hpp>

#include <cmath>
#include <numbers>

#include "kramers/exact_solution.hpp"
#include "kramers/neumann.hpp"

using namespace kramers;

namespace {
const QuadratureSpec spec;
const SpectralGrid& grid() {
  static const auto g = SpectralGrid::make(200, 200.0);
  return g;
}
const NeumannExpansion& exp_m30() {
  static const auto e =
      build_expansion(KernelContext::make(-30.0, spec), grid(), 3);
  return e;
}
const NeumannExpansion& exp_0() {
  static const auto e =
      build_expansion(KernelContext::make(0.0, spec), grid(), 3);
  return e;
}
}  // namespace

TEST_CASE("coefficients in the classical limit (alpha = -30)", "[neumann]") {
  const auto& ex = exp_m30();
  CHECK(ex.U[0] == Approx(0.8862).margin(5e-4));
  CHECK(ex.U[1] == Approx(0.1405).margin(5e-4));
  CHECK(ex.U[2] == Approx(-0.0116).margin(5e-4));
  // U_0 is exactly T_2(0)/T_1(0) as computed
  CHECK(ex.U[0] == ex.tables->U0());
}

TEST_CASE("coefficients at alpha = 0", "[neumann]") {
  const auto& ex = exp_0();
  CHECK(ex.U[0] == Approx(0.7227).margin(5e-4));
  CHECK(ex.U[1] == Approx(0.1775).margin(5e-4));
  CHECK(ex.U[2] == Approx(-0.0214).margin(5e-4));
}

TEST_CASE("U_0 column of the summary table", "[neumann]") {
  const double expected[] = {0.7227, 0.8580, 0.8769, 0.8829, 0.8850,
                             0.8858, 0.8861, 0.8862, 0.8862};
  for (int i = 0; i <= 8; ++i) {
    auto ctx = KernelContext::make(-double(i), spec);
    CHECK(moment_l(2, ctx) / moment_l(1, ctx) ==
          Approx(expected[i]).margin(5e-4));
  }
}

TEST_CASE("sign pattern and decay of the series", "[neumann]") {
  for (double a : {0.0, -1.0, -5.0, -30.0}) {
    auto ex = build_expansion(KernelContext::make(a, spec), grid(), 3);
    CHECK(ex.U[1] > 0.0);
    CHECK(ex.U[2] < 0.0);
    CHECK(ex.U[3] > 0.0);
    CHECK(std::abs(ex.U[2]) < std::abs(ex.U[1]));
    CHECK(std::abs(ex.U[3]) < std::abs(ex.U[2]));
  }
}

TEST_CASE("recursion step is linear", "[neumann]") {
  const auto& tb = *exp_m30().tables;
  std::vector<double> e0 = tb.E0v, e0x2 = tb.E0v;
  for (double& v : e0x2) v *= 2.0;
  auto [u1, e1] = neumann_step(tb, e0);
  auto [u2, e2] = neumann_step(tb, e0x2);
  CHECK(u2 == Approx(2.0 * u1).epsilon(1e-14));
  for (std::size_t i = 0; i < e1.size(); i += 37)
    CHECK(e2[i] == Approx(2.0 * e1[i]).epsilon(1e-13));
}

TEST_CASE("S-form and L-form of the recursion agree", "[neumann]") {
  // E_n = -[U_n T_1 + (1/pi) int J E_{n-1}]/L is the pre-regularization
  // form; it must match the S-tensor route away from k = 0.
  const auto& ex = exp_m30();
  const auto& ctx = ex.ctx;
  for (double k : {0.5, 2.0}) {
    for (int n : {1, 2}) {
      double integral = 0.0;
      for (std::size_t j = 0; j < grid().size(); ++j)
        integral += grid().weights[j] * J(k, grid().nodes[j], ctx) *
                    ex.E[n - 1].values[j];
      const double lform =
          -(ex.U[n] * T(1, k, ctx) + integral / std::numbers::pi) / L(k, ctx);
      CHECK(grid().eval(ex.E[n].values, k) == Approx(lform).margin(1e-8));
    }
  }
}

TEST_CASE("grid robustness of U_1, U_2", "[neumann]") {
  auto ctx = KernelContext::make(-1.0, spec);
  auto e1 = build_expansion(ctx, SpectralGrid::make(200, 200.0), 2);
  auto e2 = build_expansion(ctx, SpectralGrid::make(400, 400.0), 2);
  CHECK(std::abs(e1.U[1] - e2.U[1]) < 1e-4);
  CHECK(std::abs(e1.U[2] - e2.U[2]) < 1e-4);
}

TEST_CASE("series consistency with the exact benchmark at q = 1", "[neumann]") {
  for (const NeumannExpansion* ex : {&exp_m30(), &exp_0()}) {
    const double v1 = V1(ex->ctx);
    const double sum3 = ex->U[0] + ex->U[1] + ex->U[2] + ex->U[3];
    CHECK(std::abs(sum3 - v1) < 1e-3);
  }
}

TEST_CASE("E_n stays smooth through the removed pole", "[neumann]") {
  for (const NeumannExpansion* ex : {&exp_m30(), &exp_0()}) {
    for (int n = 0; n <= 3; ++n) {
      const double near0 = ex->grid.eval(ex->E[n].values, 1e-3);
      const double mid = ex->grid.eval(ex->E[n].values, 1e-2);
      CHECK(std::abs(near0 - mid) < 0.1 * std::abs(mid));
    }
  }
}

TEST_CASE("slip velocity assembly", "[neumann]") {
  auto r = slip_velocity(exp_m30(), 1.0);
  // sum of the classical-limit coefficients; the exact value is 1.0162
  CHECK(r.u_sl_over_Gv == Approx(1.0162).margin(1.5e-3));
  double total = 0.0;
  for (double c : r.per_order) total += c;
  CHECK(r.u_sl_over_Gv == Approx(total).epsilon(1e-14));

  auto r0 = slip_velocity(build_expansion(KernelContext::make(-30.0, spec),
                                          grid(), 0),
                          1.0);
  CHECK(r0.u_sl_over_Gv == Approx(0.8862).margin(5e-4));

  // (2-q)/q prefactor at q = 0.5
  auto rq = slip_velocity(exp_m30(), 0.5);
  double expect = 0.0;
  double qn = 1.0;
  for (int n = 0; n <= 3; ++n) {
    expect += 3.0 * exp_m30().U[n] * qn;
    qn *= 0.5;
  }
  CHECK(rq.u_sl_over_Gv == Approx(expect).epsilon(1e-14));

  CHECK_THROWS_AS(slip_velocity(exp_m30(), 0.0), SpecularLimit);
  CHECK_THROWS_AS(slip_velocity(exp_m30(), 1.5), std::invalid_argument);
}

TEST_CASE("order guard", "[neumann]") {
  CHECK_THROWS_AS(build_expansion(KernelContext::make(-1.0, spec), grid(), 7),
                  std::invalid_argument);
}

TEST_CASE("synthetic all-zero expansion", "[neumann]") {
  NeumannExpansion ex = exp_m30();
  for (double& u : ex.U) u = 0.0;
  CHECK(slip_velocity(ex, 1.0).u_sl_over_Gv == 0.0);
}

TEST_CASE("relative errors against the exact slip", "[neumann]") {
  {
    auto ctx = KernelContext::make(-8.0, spec);
    auto ex = build_expansion(ctx, grid(), 2);
    auto errs = relative_error(ex, V1(ctx));
    CHECK(errs[0] == Approx(12.79).margin(0.05));
    CHECK(errs[1] == Approx(-1.04).margin(0.05));
    CHECK(errs[2] == Approx(0.10).margin(0.05));
  }
  {
    auto errs = relative_error(exp_0(), V1(exp_0().ctx));
    CHECK(errs[0] == Approx(18.01).margin(0.05));
    CHECK(errs[1] == Approx(-2.12).margin(0.05));
    CHECK(errs[2] == Approx(0.30).margin(0.05));
  }
  // exact equal to the partial sum: zero error at that order
  const auto& ex = exp_m30();
  auto errs = relative_error(ex, ex.U[0] + ex.U[1]);
  CHECK(errs[1] == Approx(0.0).margin(1e-12));
}
