#pragma once

#include <charconv>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "kramers/dimensional.hpp"
#include "kramers/exact_solution.hpp"
#include "kramers/field_reconstruction.hpp"

namespace kramers {

using json = nlohmann::json;  // std::map storage: lexicographic key order

/// Parsed command-line configuration. Round-trips through JSON; defaults
/// reproduce the headline tables.
struct RunConfig {
  std::string command = "tables";
  std::vector<double> alphas = {0, -1, -2, -3, -4, -5, -6, -7, -8};
  double q = 1.0;
  int order = 3;
  int nk = 200;
  double kmax = 200.0;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::vector<double> xs;
  std::string format = "csv";  // csv | json
  std::string output;          // empty: stdout
  // gas parameters for the kv command (helium-4 at room conditions)
  double mass = 6.6464731e-27;
  double temperature = 300.0;
  double nu = 1e9;
  double spin = 0.0;
  double gv = 1.0;

  QuadratureSpec quad() const {
    QuadratureSpec s;
    s.abs_tol = abs_tol;
    s.rel_tol = rel_tol;
    return s;
  }
  SpectralGrid grid() const { return SpectralGrid::make(nk, kmax); }

  json to_json() const {
    json j;
    j["command"] = command;
    j["alphas"] = alphas;
    j["q"] = q;
    j["order"] = order;
    j["nk"] = nk;
    j["kmax"] = kmax;
    j["abs_tol"] = abs_tol;
    j["rel_tol"] = rel_tol;
    j["xs"] = xs;
    j["format"] = format;
    j["output"] = output;
    j["mass"] = mass;
    j["temperature"] = temperature;
    j["nu"] = nu;
    j["spin"] = spin;
    j["gv"] = gv;
    return j;
  }
  static RunConfig from_json(const json& j) {
    RunConfig c;
    j.at("command").get_to(c.command);
    j.at("alphas").get_to(c.alphas);
    j.at("q").get_to(c.q);
    j.at("order").get_to(c.order);
    j.at("nk").get_to(c.nk);
    j.at("kmax").get_to(c.kmax);
    j.at("abs_tol").get_to(c.abs_tol);
    j.at("rel_tol").get_to(c.rel_tol);
    j.at("xs").get_to(c.xs);
    j.at("format").get_to(c.format);
    j.at("output").get_to(c.output);
    j.at("mass").get_to(c.mass);
    j.at("temperature").get_to(c.temperature);
    j.at("nu").get_to(c.nu);
    j.at("spin").get_to(c.spin);
    j.at("gv").get_to(c.gv);
    return c;
  }
  bool operator==(const RunConfig&) const = default;
};

namespace fmt {

/// Shortest round-trip decimal of a double (profile CSV contract).
inline std::string shortest(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace fmt

/// Tables: rows (table, alpha, coefficient, error_percent) for the
/// zeroth/first/second coefficients and their relative errors against the
/// exact V_1(alpha). Coefficients to 4 decimals, percentages to 2.
inline std::string make_tables(const RunConfig& cfg) {
  const auto quad = cfg.quad();
  const auto grid = cfg.grid();
  struct Row {
    double alpha, U[3], O[3];
  };
  std::vector<Row> rows;
  for (double a : cfg.alphas) {
    auto ctx = KernelContext::make(a, quad);
    auto ex = build_expansion(ctx, grid, std::max(cfg.order, 2));
    const double v1 = V1(ctx);
    auto errs = relative_error(ex, v1);
    Row r{a, {ex.U[0], ex.U[1], ex.U[2]}, {errs[0], errs[1], errs[2]}};
    rows.push_back(r);
  }
  if (cfg.format == "json") {
    json tables = json::array();
    for (int t = 0; t < 3; ++t) {
      json rowsj = json::array();
      for (const auto& r : rows) {
        json e;
        e["alpha"] = r.alpha;
        e["coefficient"] = r.U[t];
        e["error_percent"] = r.O[t];
        rowsj.push_back(e);
      }
      json tbl;
      tbl["coefficient_label"] = "U_" + std::to_string(t);
      tbl["rows"] = rowsj;
      tables.push_back(tbl);
    }
    json out;
    out["tables"] = tables;
    return out.dump(2) + "\n";
  }
  std::string s = "table,alpha,coefficient,error_percent\n";
  for (int t = 0; t < 3; ++t)
    for (const auto& r : rows)
      s += std::to_string(t + 1) + "," + fmt::shortest(r.alpha) + "," +
           fmt::fixed(r.U[t], 4) + "," + fmt::fixed(r.O[t], 2) + "\n";
  return s;
}

/// Moments l_0..l_4(alpha), one row per alpha.
inline std::string make_moments(const RunConfig& cfg) {
  const auto quad = cfg.quad();
  if (cfg.format == "json") {
    json out = json::array();
    for (double a : cfg.alphas) {
      json e;
      e["alpha"] = a;
      for (int n = 0; n <= 4; ++n)
        e["l" + std::to_string(n)] = moment_l(n, a, quad);
      out.push_back(e);
    }
    return out.dump(2) + "\n";
  }
  std::string s = "alpha,l0,l1,l2,l3,l4\n";
  for (double a : cfg.alphas) {
    s += fmt::shortest(a);
    for (int n = 0; n <= 4; ++n) s += "," + fmt::shortest(moment_l(n, a, quad));
    s += "\n";
  }
  return s;
}

/// Neumann coefficients U_0..U_N for the first alpha; CSV columns (n, U_n).
/// Optional E-table dump: columns k, E_0, ..., E_N.
inline std::string make_coeffs(const RunConfig& cfg) {
  auto ctx = KernelContext::make(cfg.alphas.at(0), cfg.quad());
  auto ex = build_expansion(ctx, cfg.grid(), cfg.order);
  if (cfg.format == "json") {
    json out;
    out["alpha"] = ex.alpha();
    out["order"] = ex.order;
    out["U"] = ex.U;
    return out.dump(2) + "\n";
  }
  std::string s = "n,U_n\n";
  for (int n = 0; n <= ex.order; ++n)
    s += std::to_string(n) + "," + fmt::shortest(ex.U[n]) + "\n";
  return s;
}

inline std::string make_e_tables(const NeumannExpansion& ex) {
  std::string s = "k";
  for (int n = 0; n <= ex.order; ++n) s += ",E_" + std::to_string(n);
  s += "\n";
  for (std::size_t i = 0; i < ex.grid.size(); ++i) {
    s += fmt::shortest(ex.grid.nodes[i]);
    for (int n = 0; n <= ex.order; ++n)
      s += "," + fmt::shortest(ex.E[n].values[i]);
    s += "\n";
  }
  return s;
}

/// Debug dump of the T_n tables and E_0 on the grid.
inline std::string make_t_tables(const NeumannExpansion& ex) {
  const auto& tb = *ex.tables;
  std::string s = "k,T1,T2,T3,T4,E0\n";
  for (std::size_t i = 0; i < ex.grid.size(); ++i) {
    s += fmt::shortest(ex.grid.nodes[i]);
    s += "," + fmt::shortest(tb.T1v[i]) + "," + fmt::shortest(tb.T2v[i]) +
         "," + fmt::shortest(tb.T3v[i]) + "," + fmt::shortest(tb.T4v[i]) +
         "," + fmt::shortest(tb.E0v[i]);
    s += "\n";
  }
  return s;
}

/// Slip velocity for (alpha, q, order).
inline std::string make_slip(const RunConfig& cfg) {
  auto ctx = KernelContext::make(cfg.alphas.at(0), cfg.quad());
  auto ex = build_expansion(ctx, cfg.grid(), cfg.order);
  auto r = slip_velocity(ex, cfg.q);
  if (cfg.format == "json") {
    json out;
    out["alpha"] = r.alpha;
    out["q"] = r.q;
    out["order"] = r.order;
    out["u_sl_over_gv"] = r.u_sl_over_Gv;
    out["per_order"] = r.per_order;
    return out.dump(2) + "\n";
  }
  std::string s = "alpha,q,order,u_sl_over_gv\n";
  s += fmt::shortest(r.alpha) + "," + fmt::shortest(r.q) + "," +
       std::to_string(r.order) + "," + fmt::shortest(r.u_sl_over_Gv) + "\n";
  return s;
}

/// Exact benchmark: JSON summary {alpha, V1, wall}; CSV emits the phase
/// curve (tau, theta, zeta).
inline std::string make_exact(const RunConfig& cfg) {
  auto ctx = KernelContext::make(cfg.alphas.at(0), cfg.quad());
  if (cfg.format == "json") {
    json out;
    out["alpha"] = ctx.alpha;
    out["V1"] = V1(ctx);
    out["wall_speed_exact"] = exact_wall_speed(ctx);
    return out.dump(2) + "\n";
  }
  auto pc = PhaseCurve::build(ctx);
  std::string s = "tau,theta,zeta\n";
  for (std::size_t i = 0; i < pc.taus.size(); ++i)
    s += fmt::shortest(pc.taus[i]) + "," + fmt::shortest(pc.thetas[i]) + "," +
         fmt::shortest(pc.thetas[i] - std::numbers::pi) + "\n";
  return s;
}

/// Velocity profile U(x); CSV columns exactly x,u_total,u_asymptotic,u_knudsen
/// in shortest round-trip decimals.
inline std::string make_profile(const RunConfig& cfg) {
  std::vector<double> xs = cfg.xs;
  if (xs.empty())
    for (int i = 0; i <= 100; ++i) xs.push_back(i / 10.0);
  auto ctx = KernelContext::make(cfg.alphas.at(0), cfg.quad());
  auto ex = build_expansion(ctx, cfg.grid(), std::max(cfg.order, 3));
  auto vp = profile(ex, cfg.q, xs, cfg.order);
  if (cfg.format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < vp.xs.size(); ++i) {
      json e;
      e["x"] = vp.xs[i];
      e["u_total"] = vp.u_total[i];
      e["u_asymptotic"] = vp.u_asymptotic[i];
      e["u_knudsen"] = vp.u_knudsen[i];
      rows.push_back(e);
    }
    json out;
    out["alpha"] = vp.alpha;
    out["order"] = vp.order;
    out["q"] = vp.q;
    out["rows"] = rows;
    out["u_sl_over_gv"] = vp.u_sl;
    return out.dump(2) + "\n";
  }
  std::string s = "x,u_total,u_asymptotic,u_knudsen\n";
  for (std::size_t i = 0; i < vp.xs.size(); ++i)
    s += fmt::shortest(vp.xs[i]) + "," + fmt::shortest(vp.u_total[i]) + "," +
         fmt::shortest(vp.u_asymptotic[i]) + "," +
         fmt::shortest(vp.u_knudsen[i]) + "\n";
  return s;
}

/// Partial sums vs the exact slip at q = 1: JSON {order -> partial sum,
/// exact, error%}.
inline std::string make_compare(const RunConfig& cfg) {
  auto ctx = KernelContext::make(cfg.alphas.at(0), cfg.quad());
  auto ex = build_expansion(ctx, cfg.grid(), cfg.order);
  auto r = with_benchmark(slip_velocity(ex, 1.0), ex, V1(ctx));
  json approx;
  double partial = 0.0;
  for (int n = 0; n <= ex.order; ++n) {
    partial += ex.U[n];
    json e;
    e["error_percent"] = r.rel_error_percent->at(n);
    e["u_sl_partial"] = partial;
    approx[std::to_string(n)] = e;
  }
  json out;
  out["alpha"] = ctx.alpha;
  out["approximations"] = approx;
  out["exact_V1"] = *r.exact_V1;
  out["q"] = 1.0;
  return out.dump(2) + "\n";
}

/// Dimensional report {alpha, q, C, K_v, eta_SI, l_SI, u_sl_SI}.
inline std::string make_kv(const RunConfig& cfg) {
  auto ctx = KernelContext::make(cfg.alphas.at(0), cfg.quad());
  auto ex = build_expansion(ctx, cfg.grid(), cfg.order);
  GasParameters p;
  p.mass = cfg.mass;
  p.temperature = cfg.temperature;
  p.collision_freq = cfg.nu;
  p.spin = cfg.spin;
  p.alpha = ctx.alpha;
  p.gradient = cfg.gv;
  json out;
  out["C"] = slip_prefactor(ex, cfg.q);
  out["K_v"] = slip_coefficient_Kv(ctx, cfg.q, ex);
  out["alpha"] = ctx.alpha;
  out["eta_SI"] = viscosity(p, ctx);
  out["l_SI"] = mean_free_path(p, ctx);
  out["q"] = cfg.q;
  out["u_sl_SI"] = dimensional_slip_velocity(p, ctx, ex, cfg.q);
  return out.dump(2) + "\n";
}

/// Dispatch on cfg.command.
inline std::string run_command(const RunConfig& cfg) {
  if (cfg.command == "tables") return make_tables(cfg);
  if (cfg.command == "moments") return make_moments(cfg);
  if (cfg.command == "coeffs") return make_coeffs(cfg);
  if (cfg.command == "slip") return make_slip(cfg);
  if (cfg.command == "exact") return make_exact(cfg);
  if (cfg.command == "profile") return make_profile(cfg);
  if (cfg.command == "compare") return make_compare(cfg);
  if (cfg.command == "kv") return make_kv(cfg);
  throw std::invalid_argument("unknown command: " + cfg.command);
}

}  // namespace kramers
