#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "kramers/detail/gauss.hpp"
#include "kramers/errors.hpp"

namespace kramers {

enum class TailPolicy {
  fixed_upper_limit,  // truncate [1, inf) at tail_upper_limit
  exp_mapped          // map [1, inf) to (0, 1] via t = 1 - ln u
};

/// Tolerances and budgets that govern every integral in the library.
/// Two runs with the same spec on the same integrand are bit-identical:
/// the engine uses fixed Gauss-Kronrod nodes and a deterministic
/// subdivision order, never randomized nodes.
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 1000;
  TailPolicy tail_cutoff_policy = TailPolicy::fixed_upper_limit;
  double tail_upper_limit = 1e4;
  double pv_window = 0.5;  // half-width of the symmetric window around a pole

  void validate() const {
    if (!(abs_tol > 0.0 && abs_tol <= 1e-2) ||
        !(rel_tol > 0.0 && rel_tol <= 1e-2))
      throw std::invalid_argument(
          "QuadratureSpec: tolerances must lie in (0, 1e-2]");
    if (max_subdivisions < 8)
      throw std::invalid_argument("QuadratureSpec: max_subdivisions >= 8");
    if (!(pv_window > 0.0))
      throw std::invalid_argument("QuadratureSpec: pv_window must be > 0");
    if (!(tail_upper_limit > 1.0))
      throw std::invalid_argument("QuadratureSpec: tail_upper_limit > 1");
  }

  QuadratureSpec halved() const {
    QuadratureSpec s = *this;
    s.abs_tol *= 0.5;
    s.rel_tol *= 0.5;
    return s;
  }
};

namespace detail {

struct GKResult {
  double value;
  double error;
};

// 15-point Kronrod estimate with embedded 7-point Gauss; QUADPACK-style
// scaled error estimate.
template <class F>
GKResult gk15(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  double resk = 0.0, resg = 0.0, resabs = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double dx = h * gk15_x[i];
    const double x1 = c - dx;
    double v1 = f(x1);
    if (!std::isfinite(v1))
      throw NonFiniteIntegrand("integrand not finite at x = " +
                               std::to_string(x1));
    fv[i] = v1;
    if (i < 7) {
      const double x2 = c + dx;
      double v2 = f(x2);
      if (!std::isfinite(v2))
        throw NonFiniteIntegrand("integrand not finite at x = " +
                                 std::to_string(x2));
      fv[14 - i] = v2;
    }
  }
  for (int i = 0; i < 8; ++i) {
    const double pair = (i < 7) ? fv[i] + fv[14 - i] : fv[7];
    resk += gk15_wk[i] * pair;
    resabs += gk15_wk[i] * ((i < 7) ? std::abs(fv[i]) + std::abs(fv[14 - i])
                                    : std::abs(fv[7]));
    if (i % 2 == 1) resg += gk15_wg[i / 2] * pair;
  }
  const double mean = 0.5 * resk;
  double resasc = 0.0;
  for (int i = 0; i < 8; ++i) {
    if (i < 7)
      resasc += gk15_wk[i] * (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));
    else
      resasc += gk15_wk[i] * std::abs(fv[7] - mean);
  }
  resasc *= h;
  resabs *= h;
  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(err, 50.0 * eps * resabs);
  return {resk * h, err};
}

}  // namespace detail

/// Adaptive integral of f over [a, b]. The estimate satisfies
/// |error| <= max(abs_tol, rel_tol * |result|) per the internal error
/// estimator, or ToleranceNotReached is thrown.
template <class F>
double integrate_finite(F&& f, double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  if (!(std::isfinite(a) && std::isfinite(b)))
    throw NonFiniteInput("integrate_finite: endpoints must be finite");
  if (!(a < b))
    throw std::invalid_argument("integrate_finite requires a < b");

  struct Seg {
    double a, b, val, err;
    std::int64_t idx;
  };
  auto worse = [](const Seg& x, const Seg& y) {
    if (x.err != y.err) return x.err < y.err;
    return x.idx > y.idx;  // deterministic tie-break: older segment first
  };
  std::priority_queue<Seg, std::vector<Seg>, decltype(worse)> heap(worse);

  std::int64_t count = 0;
  auto make = [&](double lo, double hi) {
    auto r = detail::gk15(f, lo, hi);
    return Seg{lo, hi, r.value, r.error, count++};
  };

  Seg first = make(a, b);
  double total = first.val, toterr = first.err;
  heap.push(first);
  auto tol = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };

  while (toterr > tol() && count < spec.max_subdivisions) {
    Seg s = heap.top();
    const double mid = 0.5 * (s.a + s.b);
    if (s.err == 0.0 || !(mid > s.a && mid < s.b)) break;  // cannot refine
    heap.pop();
    Seg l = make(s.a, mid);
    Seg r = make(mid, s.b);
    total += l.val + r.val - s.val;
    toterr += l.err + r.err - s.err;
    heap.push(l);
    heap.push(r);
  }

  // Deterministic final summation: leaves in left-to-right order.
  std::vector<Seg> leaves;
  leaves.reserve(heap.size());
  while (!heap.empty()) {
    leaves.push_back(heap.top());
    heap.pop();
  }
  std::sort(leaves.begin(), leaves.end(),
            [](const Seg& x, const Seg& y) { return x.a < y.a; });
  double sum = 0.0, errsum = 0.0;
  for (const Seg& s : leaves) {
    sum += s.val;
    errsum += s.err;
  }
  if (errsum > std::max(spec.abs_tol, spec.rel_tol * std::abs(sum)))
    throw ToleranceNotReached(
        "integrate_finite: error " + std::to_string(errsum) + " after " +
        std::to_string(leaves.size()) + " segments on [" + std::to_string(a) +
        ", " + std::to_string(b) + "]");
  return sum;
}

/// Integral of f over [0, inf). The integrand must decay fast enough for the
/// selected tail policy: fixed_upper_limit truncates at tail_upper_limit,
/// exp_mapped substitutes t = 1 - ln u on [1, inf).
template <class F>
double integrate_semi_infinite(F&& f, const QuadratureSpec& spec) {
  spec.validate();
  double sum = integrate_finite(f, 0.0, 1.0, spec);
  if (spec.tail_cutoff_policy == TailPolicy::fixed_upper_limit) {
    // Geometric chunks so the initial estimates never sample only the
    // far-tail zeros of a fast-decaying integrand.
    double lo = 1.0;
    while (lo < spec.tail_upper_limit) {
      const double hi = std::min(2.0 * lo, spec.tail_upper_limit);
      sum += integrate_finite(f, lo, hi, spec);
      lo = hi;
    }
    return sum;
  }
  auto mapped = [&](double u) { return f(1.0 - std::log(u)) / u; };
  return sum + integrate_finite(mapped, 0.0, 1.0, spec);
}

/// Cauchy principal value of integral f(t)/(t - tau) over [a, b] with
/// a < tau < b. Symmetric subtraction inside the window [tau - w, tau + w]:
/// the constant f(tau)/(t - tau) integrates to zero there, and the
/// subtracted integrand is evaluated by a centered finite difference when
/// |t - tau| < 1e-6 to avoid cancellation.
template <class F>
double principal_value(F&& f, double tau, double a, double b,
                       const QuadratureSpec& spec) {
  spec.validate();
  if (!std::isfinite(tau)) throw NonFiniteInput("principal_value: tau");
  const double w = spec.pv_window;
  if (!(tau - w >= a && tau + w <= b))
    throw PoleTooCloseToBoundary(
        "principal_value: window [tau-w, tau+w] clipped by [a, b]");
  const double ftau = f(tau);
  const double h = 1e-6;
  const double dtau = (f(tau + h) - f(tau - h)) / (2.0 * h);
  auto sub = [&](double t) {
    const double d = t - tau;
    if (std::abs(d) < h) return dtau;
    return (f(t) - ftau) / d;
  };
  double result = integrate_finite(sub, tau - w, tau + w, spec);
  auto pole = [&](double t) { return f(t) / (t - tau); };
  if (a < tau - w) result += integrate_finite(pole, a, tau - w, spec);
  if (tau + w < b) result += integrate_finite(pole, tau + w, b, spec);
  return result;
}

/// Whole-line principal value for integrands that decay at least like a
/// Gaussian envelope; support is truncated at |t| = 40 around the pole.
template <class F>
double principal_value(F&& f, double tau, const QuadratureSpec& spec) {
  const double R = 40.0;
  return principal_value(f, tau, std::min(tau, 0.0) - R,
                         std::max(tau, 0.0) + R, spec);
}

}  // namespace kramers
