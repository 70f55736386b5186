// Command-line front end: reproduces the slip-coefficient tables, exports
// velocity profiles and spectral data as CSV/JSON, and runs the invariant
// suite. Exit codes: 0 success, 2 usage error, 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kramers/reports.hpp"
#include "kramers/validate.hpp"

namespace {

// Output is written atomically: temp file in the target directory, then
// rename over the destination.
void write_atomic(const std::string& path, const std::string& payload) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string());
    os << payload;
  }
  fs::rename(tmp, target);
}

void emit(const kramers::RunConfig& cfg, const std::string& payload) {
  if (cfg.output.empty())
    std::fwrite(payload.data(), 1, payload.size(), stdout);
  else
    write_atomic(cfg.output, payload);
}

int run_validation() {
  auto results = kramers::run_property_suite();
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%s  %s (%s)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    if (!r.pass) ++failed;
  }
  std::printf("%zu checks, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Isothermal slip of a quantum Bose gas (BGK kinetics, "
      "specular-diffuse wall): Neumann-series solver and exact benchmark"};
  app.require_subcommand(0, 1);

  kramers::RunConfig cfg;
  cfg.alphas.clear();
  double alpha = std::numeric_limits<double>::quiet_NaN();
  std::string alpha_list, xs_list;
  bool validate = false;
  std::string etables_path, ttables_path;

  app.add_flag("--validate", validate,
               "run the invariant suite and print a pass/fail summary");

  auto add_common = [&](CLI::App* c) {
    c->add_option("--alpha", alpha, "reduced chemical potential (<= 0)");
    c->add_option("--alpha-list", alpha_list,
                  "comma-separated alphas (default 0,-1,...,-8 for tables)");
    c->add_option("--q", cfg.q, "diffuseness coefficient in (0, 1]");
    c->add_option("--order", cfg.order, "Neumann order (0..6)");
    c->add_option("--nk", cfg.nk, "spectral grid nodes");
    c->add_option("--kmax", cfg.kmax, "spectral grid cutoff");
    c->add_option("--abs-tol", cfg.abs_tol, "quadrature absolute tolerance");
    c->add_option("--rel-tol", cfg.rel_tol, "quadrature relative tolerance");
    c->add_option("--xs", xs_list, "comma-separated positions (profile)");
    c->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    c->add_option("--output", cfg.output, "output path (atomic write)");
  };

  CLI::App* tables = app.add_subcommand(
      "tables", "coefficients U_0..U_2 and relative errors vs exact V_1");
  CLI::App* moments = app.add_subcommand("moments", "kernel moments l_0..l_4");
  CLI::App* coeffs =
      app.add_subcommand("coeffs", "Neumann coefficients U_n for one alpha");
  coeffs->add_option("--etables", etables_path,
                     "also dump E_n tables (k, E_0..E_N) to this CSV path");
  coeffs->add_option("--ttables", ttables_path,
                     "also dump T_n/E_0 tables (k, T1..T4, E0) to this path");
  CLI::App* slip = app.add_subcommand("slip", "slip velocity per unit gradient");
  CLI::App* exact = app.add_subcommand(
      "exact", "exact benchmark: V_1 and wall speed (csv: phase curve)");
  CLI::App* profile =
      app.add_subcommand("profile", "velocity profile U(x) as CSV");
  CLI::App* compare = app.add_subcommand(
      "compare", "partial sums vs exact slip at q = 1 (json)");
  CLI::App* kv = app.add_subcommand(
      "kv", "dimensional report: viscosity, mean free path, K_v");
  kv->add_option("--mass", cfg.mass, "particle mass, kg");
  kv->add_option("--temperature", cfg.temperature, "temperature, K");
  kv->add_option("--nu", cfg.nu, "collision frequency, 1/s");
  kv->add_option("--spin", cfg.spin, "particle spin");
  kv->add_option("--gv", cfg.gv, "velocity gradient g_v, 1/s");
  for (CLI::App* c :
       {tables, moments, coeffs, slip, exact, profile, compare, kv})
    add_common(c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  if (validate) return run_validation();
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 2;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();

    auto parse_list = [](const std::string& text) {
      std::vector<double> out;
      std::size_t pos = 0;
      while (pos < text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        const std::string tok = text.substr(pos, next - pos);
        if (!tok.empty()) out.push_back(std::stod(tok));
        pos = next + 1;
      }
      return out;
    };
    if (!alpha_list.empty()) cfg.alphas = parse_list(alpha_list);
    if (!std::isnan(alpha)) cfg.alphas.push_back(alpha);
    if (cfg.alphas.empty()) {
      if (cfg.command == "tables" || cfg.command == "moments")
        cfg.alphas = {0, -1, -2, -3, -4, -5, -6, -7, -8};
      else
        cfg.alphas = {0.0};
    }
    const bool xs_given = app.get_subcommands().front()->count("--xs") > 0;
    if (!xs_list.empty()) cfg.xs = parse_list(xs_list);
    if (cfg.command == "profile" && xs_given && cfg.xs.empty()) {
      std::cerr << "{\"error\":\"usage\",\"message\":\"--xs list is empty\"}\n";
      return 2;
    }

    emit(cfg, kramers::run_command(cfg));
    if (!etables_path.empty() || !ttables_path.empty()) {
      auto ctx = kramers::KernelContext::make(cfg.alphas.at(0), cfg.quad());
      auto ex = kramers::build_expansion(ctx, cfg.grid(), cfg.order);
      if (!etables_path.empty())
        write_atomic(etables_path, kramers::make_e_tables(ex));
      if (!ttables_path.empty())
        write_atomic(ttables_path, kramers::make_t_tables(ex));
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "{\"error\":\"usage\",\"message\":\"" << e.what() << "\"}\n";
    return 2;
  } catch (const kramers::Error& e) {
    std::cerr << "{\"error\":\"numerical\",\"message\":\"" << e.what()
              << "\"}\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\":\"internal\",\"message\":\"" << e.what()
              << "\"}\n";
    return 3;
  }
}
