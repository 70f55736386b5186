#include <catch2/catch.hpp>

#include <cmath>
#include <cstring>
#include <numbers>

#include "kramers/exact_solution.hpp"
#include "kramers/quadrature.hpp"

using namespace kramers;
namespace num = std::numbers;

TEST_CASE("finite-interval basics", "[quadrature]") {
  QuadratureSpec spec;
  CHECK(integrate_finite([](double x) { return x; }, 0, 1, spec) ==
        Approx(0.5).margin(1e-12));
  // endpoint log singularity
  CHECK(integrate_finite([](double x) { return std::log(x); }, 0, 1, spec) ==
        Approx(-1.0).margin(1e-9));
  CHECK(integrate_finite([](double x) { return std::sin(x); }, 0, num::pi,
                         spec) == Approx(2.0).margin(1e-12));
}

TEST_CASE("finite-interval error paths", "[quadrature]") {
  QuadratureSpec spec;
  CHECK_THROWS_AS(integrate_finite([](double) { return 1.0; }, 1, 0, spec),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      integrate_finite([](double x) { return 1.0 / x; }, -1, 1, spec),
      NonFiniteIntegrand);
  QuadratureSpec tiny = spec;
  tiny.max_subdivisions = 8;
  CHECK_THROWS_AS(integrate_finite([](double x) { return std::cos(50.0 * x); },
                                   0, 37.0, tiny),
                  ToleranceNotReached);
  QuadratureSpec bad = spec;
  bad.abs_tol = 0.0;
  CHECK_THROWS_AS(integrate_finite([](double) { return 1.0; }, 0, 1, bad),
                  std::invalid_argument);
}

TEST_CASE("semi-infinite integrals", "[quadrature]") {
  QuadratureSpec spec;
  CHECK(integrate_semi_infinite([](double t) { return std::exp(-t * t); },
                                spec) ==
        Approx(std::sqrt(num::pi) / 2).margin(1e-10));
  QuadratureSpec mapped = spec;
  mapped.tail_cutoff_policy = TailPolicy::exp_mapped;
  CHECK(integrate_semi_infinite([](double t) { return std::exp(-t * t); },
                                mapped) ==
        Approx(std::sqrt(num::pi) / 2).margin(1e-10));
  // ln(1 - e^{-t^2}): value from the termwise series, -(sqrt(pi)/2) zeta(3/2)
  CHECK(integrate_semi_infinite(
            [](double t) { return std::log(-std::expm1(-t * t)); }, spec) ==
        Approx(-2.3151573733).margin(1e-8));
  CHECK(integrate_semi_infinite(
            [](double k) {
              const double d = 1.0 + k * k;
              return 1.0 / (d * d);
            },
            spec) == Approx(num::pi / 4).margin(1e-9));
}

TEST_CASE("principal value", "[quadrature]") {
  QuadratureSpec spec;
  // odd integrand about the pole
  CHECK(principal_value([](double t) { return std::exp(-t * t); }, 0.0,
                        spec) == Approx(0.0).margin(1e-10));

  // Gaussian pole at tau = 1: refinement-convergence oracle at 10x tighter
  // tolerance, plus the frozen value -2 sqrt(pi) F(1) with F the Dawson
  // function.
  auto g = [](double t) { return std::exp(-t * t); };
  const double v = principal_value(g, 1.0, spec);
  QuadratureSpec tight = spec;
  tight.abs_tol = spec.abs_tol / 10.0;
  tight.rel_tol = spec.rel_tol / 10.0;
  tight.pv_window = 0.25;
  const double oracle = principal_value(g, 1.0, tight);
  CHECK(v == Approx(oracle).margin(1e-9));
  CHECK(v == Approx(-1.9074422188).margin(1e-8));

  CHECK_THROWS_AS(principal_value(g, 1.0, 0.8, 5.0, spec),
                  PoleTooCloseToBoundary);
}

TEST_CASE("dispersion prefactor kills the PV integral at tau -> 0",
          "[quadrature]") {
  QuadratureSpec spec;
  for (double a : {0.0, -2.0}) {
    auto ctx = KernelContext::make(a, spec);
    CHECK(dispersion_lambda(1e-8, ctx) == Approx(1.0).margin(1e-6));
  }
}

TEST_CASE("refinement convergence", "[quadrature]") {
  QuadratureSpec spec;
  spec.abs_tol = spec.rel_tol = 1e-8;
  auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x); };
  const double v1 = integrate_finite(f, 0, 10, spec);
  const double v2 = integrate_finite(f, 0, 10, spec.halved());
  CHECK(std::abs(v1 - v2) < 1e-8);
}

TEST_CASE("PV window independence on the dispersion family", "[quadrature]") {
  QuadratureSpec spec;
  auto ctx1 = KernelContext::make(-1.0, spec);
  QuadratureSpec wide = spec;
  wide.pv_window = 2.0 * spec.pv_window;
  auto ctx2 = KernelContext::make(-1.0, wide);
  for (double tau : {0.1, 0.5, 1.0, 2.0}) {
    const double a = dispersion_lambda(tau, ctx1);
    const double b = dispersion_lambda(tau, ctx2);
    CHECK(std::abs(a - b) < 10.0 * spec.abs_tol);
  }
}

TEST_CASE("determinism: repeated evaluation is bit-identical", "[quadrature]") {
  QuadratureSpec spec;
  auto f = [](double x) { return std::sin(x * x) / (1.0 + x); };
  const double a = integrate_finite(f, 0, 7, spec);
  const double b = integrate_finite(f, 0, 7, spec);
  CHECK(std::memcmp(&a, &b, sizeof a) == 0);
  const double p1 = principal_value([](double t) { return std::exp(-t * t); },
                                    0.7, spec);
  const double p2 = principal_value([](double t) { return std::exp(-t * t); },
                                    0.7, spec);
  CHECK(std::memcmp(&p1, &p2, sizeof p1) == 0);
}
