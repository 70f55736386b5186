#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace kramers::detail {

// Gauss-Kronrod 15(7) rule on [-1, 1] (QUADPACK dqk15 abscissae/weights).
// xgk holds the positive half; node 7 is the midpoint. Every even-index
// node is also a node of the embedded 7-point Gauss rule.
inline constexpr std::array<double, 8> gk15_x = {
    0.9914553711208126392069, 0.9491079123427585245262,
    0.8648644233597690727897, 0.7415311855993944398639,
    0.5860872354676911302941, 0.4058451513773971669066,
    0.2077849550078984676007, 0.0};

inline constexpr std::array<double, 8> gk15_wk = {
    0.0229353220105292249637, 0.0630920926299785532907,
    0.1047900103222501838399, 0.1406532597155259187452,
    0.1690047266392679028266, 0.1903505780647854099133,
    0.2044329400752988924142, 0.2094821410847278280130};

inline constexpr std::array<double, 4> gk15_wg = {
    0.1294849661688696932706, 0.2797053914892766679015,
    0.3818300505051189449504, 0.4179591836734693877551};

// 8-point Gauss-Legendre rule on [-1, 1], positive half.
inline constexpr std::array<double, 4> gl8_x = {
    0.1834346424956498049395, 0.5255324099163289858177,
    0.7966664774136267395916, 0.9602898564975362316836};

inline constexpr std::array<double, 4> gl8_w = {
    0.3626837833783619829652, 0.3137066458778872873380,
    0.2223810344533744705444, 0.1012285362903762591525};

// 16-point Gauss-Legendre rule on [-1, 1], positive half.
inline constexpr std::array<double, 8> gl16_x = {
    0.0950125098376374401853, 0.2816035507792589132305,
    0.4580167776572273863424, 0.6178762444026437484467,
    0.7554044083550030338951, 0.8656312023878317438805,
    0.9445750230732325760780, 0.9894009349916499325962};

inline constexpr std::array<double, 8> gl16_w = {
    0.1894506104550684962854, 0.1826034150449235888667,
    0.1691565193950025381893, 0.1495959888165767320815,
    0.1246289712555338720525, 0.0951585116824927848099,
    0.0622535239386478928628, 0.0271524594117540948518};

// Full ascending node/weight list of a symmetric rule given its positive half
// (a zero entry is taken as the midpoint and emitted once).
template <std::size_t N>
inline void expand_symmetric(const std::array<double, N>& xs,
                             const std::array<double, N>& ws,
                             std::vector<double>& nodes,
                             std::vector<double>& weights) {
  std::vector<std::pair<double, double>> all;
  for (std::size_t i = 0; i < N; ++i) {
    if (xs[i] == 0.0) {
      all.emplace_back(0.0, ws[i]);
    } else {
      all.emplace_back(xs[i], ws[i]);
      all.emplace_back(-xs[i], ws[i]);
    }
  }
  std::sort(all.begin(), all.end());
  nodes.clear();
  weights.clear();
  for (auto& [x, w] : all) {
    nodes.push_back(x);
    weights.push_back(w);
  }
}

struct Rule {
  std::vector<double> nodes, weights;
};

template <std::size_t N>
inline Rule make_rule(const std::array<double, N>& xs,
                      const std::array<double, N>& ws) {
  Rule r;
  expand_symmetric(xs, ws, r.nodes, r.weights);
  return r;
}

// Ascending full-interval Gauss-Legendre rules on [-1, 1].
inline const Rule& gl8() {
  static const Rule r = make_rule(gl8_x, gl8_w);
  return r;
}
inline const Rule& gl16() {
  static const Rule r = make_rule(gl16_x, gl16_w);
  return r;
}

inline const std::vector<double>& gl8_nodes() { return gl8().nodes; }
inline const std::vector<double>& gl8_weights() { return gl8().weights; }
inline const std::vector<double>& gl16_nodes() { return gl16().nodes; }
inline const std::vector<double>& gl16_weights() { return gl16().weights; }

// Barycentric interpolation weights for an arbitrary node set.
inline std::vector<double> barycentric_weights(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> w(n, 1.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (i != j) w[j] /= (x[j] - x[i]);
  return w;
}

}  // namespace kramers::detail
