// Command-line front end: run, equilibrium, list-cases.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "wbfv/cli.hpp"

namespace {

// Flags are appended after the config file so that they take precedence.
void add_flag(CLI::App* app, wbfv::Settings& flags, const std::string& name, const std::string& key,
              const std::string& help) {
  app->add_option_function<std::string>(name, [&flags, key](const std::string& v) { flags.emplace_back(key, v); }, help);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Well-balanced finite volume solver for the Euler equations with gravity"};
  app.require_subcommand(1);

  std::string config, out = "out";
  wbfv::Settings flags;
  std::vector<std::string> sets;

  auto* run = app.add_subcommand("run", "run a named case");
  run->add_option("--config", config, "INI configuration file");
  run->add_option("--out", out, "output directory")->capture_default_str();
  add_flag(run, flags, "--case", "case", "case name (see list-cases)");
  add_flag(run, flags, "--nx", "nx", "cells (1D) or nodes in x (2D)");
  add_flag(run, flags, "--ny", "ny", "nodes in y (2D)");
  add_flag(run, flags, "--grids", "grids", "comma-separated grid sizes for a convergence sweep");
  add_flag(run, flags, "--tfinal", "tfinal", "final time");
  add_flag(run, flags, "--max-steps", "max_steps", "stop after this many steps");
  add_flag(run, flags, "--cfl", "cfl", "CFL number in (0, 1]");
  add_flag(run, flags, "--scheme", "scheme", "wb or nwb");
  add_flag(run, flags, "--flux", "flux", "numerical flux (hllc)");
  add_flag(run, flags, "--kappa", "kappa", "limiter parameter in [1, 2]");
  add_flag(run, flags, "--norm", "norm", "norm for convergence.csv: l1, l2 or linf");
  add_flag(run, flags, "--snapshots", "snapshots", "comma-separated output times");
  add_flag(run, flags, "--every", "every", "time-series sampling interval in steps");
  run->add_option("--set", sets, "extra key=value settings (repeatable)");

  std::string eq_config, eq_out;
  std::vector<std::string> eq_sets;
  wbfv::Settings eq_flags;
  auto* eq = app.add_subcommand("equilibrium", "compute a hydrostatic profile as CSV");
  eq->add_option("--config", eq_config, "INI configuration file");
  eq->add_option("--out", eq_out, "output CSV file (stdout if omitted)");
  add_flag(eq, eq_flags, "--nodes", "nodes", "number of points");
  add_flag(eq, eq_flags, "--xmin", "xmin", "first point");
  add_flag(eq, eq_flags, "--xmax", "xmax", "last point");
  add_flag(eq, eq_flags, "--profile", "profile", "isothermal or polytropic temperature");
  add_flag(eq, eq_flags, "--T0", "T0", "temperature (at phi = 0 for polytropic)");
  add_flag(eq, eq_flags, "--nu", "nu", "polytropic index");
  add_flag(eq, eq_flags, "--potential", "potential", "potential kind");
  add_flag(eq, eq_flags, "--eos", "eos.variant", "ideal, vdw or radiation");
  add_flag(eq, eq_flags, "--anchor-kind", "anchor.kind", "pressure or density");
  add_flag(eq, eq_flags, "--anchor-index", "anchor.index", "anchor point index");
  add_flag(eq, eq_flags, "--anchor-value", "anchor.value", "anchor value");
  add_flag(eq, eq_flags, "--method", "method", "discrete or reference");
  eq->add_option("--set", eq_sets, "extra key=value settings (repeatable)");

  auto* list = app.add_subcommand("list-cases", "print the case registry");

  CLI11_PARSE(app, argc, argv);

  auto split_set = [](const std::string& s) {
    const auto eqpos = s.find('=');
    if (eqpos == std::string::npos) throw wbfv::ConfigError("--set expects key=value, got '" + s + "'");
    return std::pair{s.substr(0, eqpos), s.substr(eqpos + 1)};
  };

  try {
    if (list->parsed()) {
      std::cout << wbfv::list_cases_text();
      return 0;
    }
    if (run->parsed()) {
      wbfv::Settings all = config.empty() ? wbfv::Settings{} : wbfv::read_ini(config);
      all.insert(all.end(), flags.begin(), flags.end());
      for (const auto& s : sets) all.push_back(split_set(s));
      const auto spec = wbfv::resolve_case(all);
      const auto results = wbfv::run_case(spec, out, &std::cerr);
      for (const auto& r : results)
        for (const auto& vn : r.norms)
          std::cout << spec.name << " " << r.cells << " " << vn.variable << " l1=" << wbfv::detail::fmt(vn.norms.l1)
                    << " l2=" << wbfv::detail::fmt(vn.norms.l2) << "\n";
      return 0;
    }
    if (eq->parsed()) {
      wbfv::EquilibriumConfig c;
      wbfv::Settings all = eq_config.empty() ? wbfv::Settings{} : wbfv::read_ini(eq_config);
      all.insert(all.end(), eq_flags.begin(), eq_flags.end());
      for (const auto& s : eq_sets) all.push_back(split_set(s));
      for (const auto& [k, v] : all) wbfv::apply_equilibrium_setting(c, k, v);
      const auto h = wbfv::compute_equilibrium(c);
      if (eq_out.empty()) {
        wbfv::write_equilibrium_csv(std::cout, c, h);
      } else {
        std::ofstream f(eq_out);
        if (!f) throw wbfv::ConfigError("cannot write '" + eq_out + "'");
        wbfv::write_equilibrium_csv(f, c, h);
      }
      return 0;
    }
  } catch (const wbfv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
