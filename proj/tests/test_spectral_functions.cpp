#include <catch2/catch.hpp>

#include <cmath>
#include <numbers>

#include "kramers/spectral_functions.hpp"

using namespace kramers;
namespace num = std::numbers;

namespace {
const QuadratureSpec spec;
const KernelContext& ctx_m30() {
  static const auto c = KernelContext::make(-30.0, spec);
  return c;
}
const KernelContext& ctx_0() {
  static const auto c = KernelContext::make(0.0, spec);
  return c;
}
const KernelContext& ctx_1() {
  static const auto c = KernelContext::make(-1.0, spec);
  return c;
}
}  // namespace

TEST_CASE("T_n at k = 0", "[spectral]") {
  CHECK(T(0, 0.0, ctx_1()) == Approx(1.0).margin(1e-10));  // normalization
  // Maxwellian limit: T_2(0) = 1/2, T_1(0) = 1/sqrt(pi)
  CHECK(T(2, 0.0, ctx_m30()) == Approx(0.5).margin(1e-6));
  CHECK(T(1, 0.0, ctx_m30()) == Approx(1.0 / std::sqrt(num::pi)).margin(1e-6));
  CHECK(T(2, 0.0, ctx_m30()) / T(1, 0.0, ctx_m30()) ==
        Approx(0.8862).margin(5e-5));
  CHECK(T(2, 0.0, ctx_0()) / T(1, 0.0, ctx_0()) == Approx(0.7227).margin(5e-5));
  CHECK_THROWS_AS(T(6, 0.0, ctx_1()), std::invalid_argument);
  CHECK_THROWS_AS(T(2, std::nan(""), ctx_1()), NonFiniteInput);
}

TEST_CASE("grid construction guards", "[spectral]") {
  CHECK_THROWS_AS(SpectralGrid::make(8, 200.0), std::invalid_argument);
  CHECK_THROWS_AS(SpectralGrid::make(200, 0.5), std::invalid_argument);
  auto g = SpectralGrid::make(200, 200.0);
  CHECK_THROWS_AS(g.panel_of(201.0), std::invalid_argument);
}

TEST_CASE("L(k) forms agree", "[spectral]") {
  CHECK(L(0.0, ctx_1()) == 0.0);
  for (double k : {0.1, 1.0, 10.0}) {
    auto f = [&](double t) {
      return kernel_eval(t, ctx_1()) / (1.0 + k * k * t * t);
    };
    const double direct = 1.0 - 2.0 * detail::integrate_kernel_decay(f, spec);
    CHECK(L(k, ctx_1()) / direct == Approx(1.0).margin(1e-8));
  }
  CHECK(std::abs(L(1000.0, ctx_1()) - 1.0) < 0.02);
}

TEST_CASE("J reduces to T_1 and is symmetric", "[spectral]") {
  for (double k : {0.0, 0.5, 2.0})
    CHECK(J(k, 0.0, ctx_1()) == Approx(T(1, k, ctx_1())).margin(1e-8));
  for (auto [k, k1] : {std::pair{0.3, 1.7}, {2.0, 0.9}})
    CHECK(J(k, k1, ctx_1()) == Approx(J(k1, k, ctx_1())).margin(1e-12));
  CHECK(J(0.0, 0.0, ctx_1()) == Approx(T(1, 0.0, ctx_1())).margin(1e-10));
}

TEST_CASE("S regularizes the coupling kernel", "[spectral]") {
  for (double k : {0.2, 1.0, 5.0}) CHECK(S(k, 0.0, ctx_1()) == 0.0);
  const double t10 = T(1, 0.0, ctx_1());
  for (auto [k, k1] : {std::pair{0.5, 0.5}, {1.0, 2.0}, {3.0, 0.2}}) {
    const double lhs = k * k * S(k, k1, ctx_1());
    const double rhs =
        J(k, k1, ctx_1()) - T(1, k, ctx_1()) * T(1, k1, ctx_1()) / t10;
    CHECK(lhs == Approx(rhs).margin(1e-8));
    // algebraic consequence of the symmetric bracket
    CHECK(k * k * S(k, k1, ctx_1()) ==
          Approx(k1 * k1 * S(k1, k, ctx_1())).margin(1e-10));
  }
}

TEST_CASE("E_0 through the removed pole", "[spectral]") {
  // E_0 L = T_2 - U_0 T_1 for k > 0
  const double U0 = T(2, 0.0, ctx_1()) / T(1, 0.0, ctx_1());
  for (double k : {0.25, 1.0, 4.0}) {
    CHECK(E0(k, ctx_1()) * L(k, ctx_1()) ==
          Approx(T(2, k, ctx_1()) - U0 * T(1, k, ctx_1())).margin(1e-7));
  }
  // continuity at k = 0
  CHECK(std::abs(E0(1e-3, ctx_1()) - E0(0.0, ctx_1())) < 1e-4);
  // Maxwellian value E_0(0) = (U_0 T_3(0) - T_4(0)) / T_2(0) = -1/2
  CHECK(E0(0.0, ctx_m30()) == Approx(-0.5).margin(1e-4));
}

TEST_CASE("E_0 large-k growth stays within the tail model", "[spectral]") {
  // |k^2 E_0| <= 1 + 2 U_0 K_B(0) ln(k) (1 + o(1)) from T_2 k^2 -> 1
  const double U0 = T(2, 0.0, ctx_1()) / T(1, 0.0, ctx_1());
  const double kb0 = kernel_eval(0.0, ctx_1());
  for (double k : {1e2, 1e3}) {
    const double bound = 1.0 + 1.2 * U0 * 2.0 * kb0 * std::log(k);
    CHECK(std::abs(k * k * E0(k, ctx_1())) < bound);
  }
}

TEST_CASE("descent identities", "[spectral]") {
  for (double k : {0.5, 1.0, 2.0}) {
    CHECK(T(3, k, ctx_1()) ==
          Approx((T(1, 0.0, ctx_1()) - T(1, k, ctx_1())) / (k * k))
              .margin(1e-8));
    CHECK(T(4, k, ctx_1()) ==
          Approx((T(2, 0.0, ctx_1()) - T(2, k, ctx_1())) / (k * k))
              .margin(1e-8));
  }
}

TEST_CASE("evenness and monotonicity of T_n", "[spectral]") {
  for (int n = 0; n <= 5; ++n) {
    CHECK(T(n, -1.3, ctx_1()) == T(n, 1.3, ctx_1()));
    double prev = T(n, 0.0, ctx_1());
    for (double k : {0.5, 1.0, 2.0, 5.0}) {
      const double cur = T(n, k, ctx_1());
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("cached rule matches adaptive quadrature", "[spectral]") {
  auto grid = SpectralGrid::make(96, 200.0);
  auto tb = SpectralTables::build(ctx_1(), grid);
  for (std::size_t i : {std::size_t{0}, grid.size() / 2, grid.size() - 1}) {
    const double k = grid.nodes[i];
    CHECK(tb.T1v[i] == Approx(T(1, k, ctx_1())).margin(1e-9));
    CHECK(tb.T2v[i] == Approx(T(2, k, ctx_1())).margin(1e-9));
  }
  const std::size_t i = grid.size() / 3, j = 2 * grid.size() / 3;
  CHECK(tb.s_at(i, j) ==
        Approx(S(grid.nodes[i], grid.nodes[j], ctx_1())).margin(1e-8));
}

TEST_CASE("order-0 Fredholm residual on the grid", "[spectral]") {
  // E_0 L - (T_2 - U_0 T_1) = 0: the q = 0 reduction of the characteristic
  // equation with the 2 T_2 inhomogeneity scaling folded out.
  auto grid = SpectralGrid::make(200, 200.0);
  auto tb = SpectralTables::build(ctx_0(), grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double k = grid.nodes[i];
    const double resid = tb.E0v[i] * (k * k * tb.T2v[i]) -
                         (tb.T2v[i] - tb.U0() * tb.T1v[i]);
    worst = std::max(worst, std::abs(resid));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("spectral grid integrates the Lorentzian exactly enough",
          "[spectral]") {
  auto grid = SpectralGrid::make(200, 200.0);
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    v[i] = 1.0 / (1.0 + grid.nodes[i] * grid.nodes[i]);
  CHECK(grid.integrate(v) == Approx(std::atan(grid.kmax)).margin(1e-8));
  // nodes strictly increasing
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    CHECK(grid.nodes[i] < grid.nodes[i + 1]);
  // barycentric evaluation reproduces a smooth function between nodes
  for (double k : {0.0123, 0.77, 13.0, 190.0})
    CHECK(grid.eval(v, k) == Approx(1.0 / (1.0 + k * k)).margin(1e-9));
}
