#pragma once
// Run orchestration behind the command-line tool: config files, case runs,
// equilibrium profiles and CSV output.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wbfv/cases.hpp"
#include "wbfv/hydrostatic.hpp"
#include "wbfv/timestep.hpp"

namespace wbfv {

using Settings = std::vector<std::pair<std::string, std::string>>;

/// Flat INI: `key = value` lines, `[section]` prefixes keys with "section."
/// except for [run] and [case]. '#' and ';' start comments.
inline Settings parse_ini(std::istream& in, const std::string& origin = "config") {
  Settings out;
  std::string line, section;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    if (!section.empty() && section != "run" && section != "case") key = section + "." + key;
    out.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return out;
}

inline Settings read_ini(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_ini(in, path);
}

/// Case selected by the settings (the last "case" key wins) with all settings applied in order.
inline CaseSpec resolve_case(const Settings& settings) {
  std::string name;
  for (const auto& [k, v] : settings)
    if (k == "case") name = v;
  if (name.empty()) throw ConfigError("no case selected (use --case or a 'case' key)");
  CaseSpec spec = find_case(name);
  for (const auto& [k, v] : settings)
    if (k != "case") apply_setting(spec, k, v);
  return spec;
}

inline std::string resolved_config_text(const CaseSpec& s) {
  std::string out = "# resolved configuration; pass with --config to reproduce the run\n";
  for (const auto& [k, v] : settings_of(s)) out += k + " = " + v + "\n";
  return out;
}

namespace detail {

inline std::string time_tag(double t) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", t);
  return buf;
}

class CsvFile {
 public:
  explicit CsvFile(const std::filesystem::path& p) : out_(p) {
    if (!out_) throw ConfigError("cannot write '" + p.string() + "'");
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }
  std::ofstream& stream() { return out_; }

 private:
  std::ofstream out_;
};

template <int D>
std::vector<std::string> header_cells(bool dtheta) {
  std::vector<std::string> h = D == 1 ? std::vector<std::string>{"x"} : std::vector<std::string>{"x", "y"};
  for (const auto& n : variable_names<D>()) h.push_back(n);
  h.push_back("drho");
  h.push_back("dp");
  if (dtheta) h.push_back("dtheta");
  return h;
}

inline void write_profile(const std::filesystem::path& dir, const Setup1D& s, double t, const Solver1D::State& q) {
  CsvFile f(dir / ("profile_t" + time_tag(t) + ".csv"));
  f.row(header_cells<1>(false));
  const auto v = to_primitive(q, s.eos);
  for (int i = 0; i < s.grid.n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    f.row({fmt(s.grid.x(i)), fmt(v[k].rho), fmt(v[k].vel[0]), fmt(v[k].p), fmt(v[k].rho - s.background[k].rho),
           fmt(v[k].p - s.background[k].p)});
  }
}

inline void write_profile(const std::filesystem::path& dir, const Setup2D& s, double t, const Solver2D::State& q) {
  CsvFile f(dir / ("profile_t" + time_tag(t) + ".csv"));
  const bool dth = s.p_ref > 0.0;
  f.row(header_cells<2>(dth));
  const auto v = to_primitive(q, s.eos);
  std::vector<double> d;
  if (dth) d = potential_temperature_perturbation(s, v);
  for (int j = 0; j < s.grid.ny; ++j)
    for (int i = 0; i < s.grid.nx; ++i) {
      const std::size_t k = s.grid.index(i, j);
      std::vector<std::string> r{fmt(s.grid.x(i)), fmt(s.grid.y(j)), fmt(v[k].rho), fmt(v[k].vel[0]),
                                 fmt(v[k].vel[1]), fmt(v[k].p), fmt(v[k].rho - s.background[k].rho),
                                 fmt(v[k].p - s.background[k].p)};
      if (dth) r.push_back(fmt(d[k]));
      f.row(r);
    }
}

inline std::vector<Prim<1>> reference_prims(const Setup1D& s, double) { return to_primitive(s.q0, s.eos); }

inline std::vector<Prim<2>> reference_prims(const Setup2D& s, double t) {
  if (s.spec.reference != "exact" || !s.exact) return to_primitive(s.q0, s.eos);
  std::vector<Prim<2>> v(s.grid.size());
  for (int j = 0; j < s.grid.ny; ++j)
    for (int i = 0; i < s.grid.nx; ++i) v[s.grid.index(i, j)] = s.exact(s.grid.x(i), s.grid.y(j), t);
  return v;
}

inline double spacing(const Setup1D& s) { return s.grid.dx; }
inline double spacing(const Setup2D& s) { return s.grid.dx; }

}  // namespace detail

/// Outcome of one grid of a run.
struct GridResult {
  int cells = 0;
  double h = 0.0;
  long steps = 0;
  double t = 0.0;
  double mass_drift = 0.0;  // relative change of total mass
  std::vector<VariableNorms> norms;  // against the case reference at the final time
};

/// Runs one grid of a case, writing profiles and the time series into `dir`.
template <class Setup>
GridResult run_grid(const Setup& setup, const std::filesystem::path& dir, std::ostream* log = nullptr) {
  constexpr int D = std::is_same_v<Setup, Setup1D> ? 1 : 2;
  std::filesystem::create_directories(dir);
  auto solver = make_solver(setup);
  auto q = setup.q0;
  const auto& spec = setup.spec;
  const auto weights = norm_weights(setup.grid);
  const auto initial = to_primitive(setup.q0, setup.eos);
  const double mass0 = total_mass(setup.q0, setup.grid);

  detail::CsvFile ts(dir / "timeseries.csv");
  {
    std::vector<std::string> h{"t"};
    for (const auto& n : variable_names<D>()) h.push_back(n + "_l1");
    ts.row(h);
  }
  auto sample = [&](double t, const std::vector<Cons<D>>& state) {
    std::vector<std::string> r{detail::fmt(t)};
    for (const auto& vn : error_norms<D>(to_primitive(state, setup.eos), initial, weights)) r.push_back(detail::fmt(vn.norms.l1));
    ts.row(r);
  };

  RunControl<D> rc;
  rc.t_final = spec.t_final;
  rc.max_steps = spec.max_steps;
  rc.stops = spec.snapshots;
  double t_now = 0.0;
  long last_sampled = 0;
  rc.on_step = [&](long step, double t, const std::vector<Cons<D>>& state) {
    t_now = t;
    if (spec.every > 0 && step % spec.every == 0) {
      sample(t, state);
      last_sampled = step;
    }
  };
  rc.on_stop = [&](double t, const std::vector<Cons<D>>& state) { detail::write_profile(dir, setup, t, state); };

  sample(0.0, q);
  RunStats st;
  try {
    st = integrate(solver, q, 0.0, rc);
  } catch (const Error& e) {
    throw Error("case " + spec.name + " on " + std::to_string(spec.nx) + " points failed at t = " +
                detail::fmt(t_now) + ": " + e.what());
  }
  if (st.steps != last_sampled) sample(st.t, q);
  detail::write_profile(dir, setup, st.t, q);

  GridResult r;
  r.cells = spec.nx;
  r.h = detail::spacing(setup);
  r.steps = st.steps;
  r.t = st.t;
  r.mass_drift = std::abs(total_mass(q, setup.grid) - mass0) / std::abs(mass0);
  r.norms = error_norms<D>(to_primitive(q, setup.eos), detail::reference_prims(setup, st.t), weights);
  if (log)
    *log << spec.name << ": " << spec.nx << (D == 2 ? "x" + std::to_string(spec.ny) : std::string()) << " points, "
         << st.steps << " steps to t = " << detail::fmt(st.t) << "\n";
  return r;
}

/// Runs every requested grid of the case and writes norms.csv, convergence.csv
/// (two or more grids) and resolved_config.ini into `out`.
inline std::vector<GridResult> run_case(const CaseSpec& spec, const std::filesystem::path& out,
                                        std::ostream* log = nullptr) {
  std::filesystem::create_directories(out);
  {
    std::ofstream cfg(out / "resolved_config.ini");
    cfg << resolved_config_text(spec);
  }
  std::vector<int> grids = spec.grids.empty() ? std::vector<int>{spec.nx} : spec.grids;
  std::vector<GridResult> results;
  for (int n : grids) {
    CaseSpec s = spec;
    if (spec.dim == 2) {
      // Square grids scale both directions; otherwise keep the aspect ratio of the node counts.
      s.ny = spec.nx == spec.ny ? n : std::max(5, static_cast<int>(std::lround((spec.ny - 1) * double(n - 1) / (spec.nx - 1))) + 1);
    }
    s.nx = n;
    const auto dir = grids.size() > 1 ? out / ("grid_" + std::to_string(n)) : out;
    if (s.dim == 1)
      results.push_back(run_grid(build_1d(s), dir, log));
    else
      results.push_back(run_grid(build_2d(s), dir, log));
  }

  detail::CsvFile norms(out / "norms.csv");
  norms.row({"cells", "variable", "norm", "value"});
  for (const auto& r : results)
    for (const auto& vn : r.norms)
      for (const char* kind : {"l1", "l2", "linf"})
        norms.row({std::to_string(r.cells), vn.variable, kind, detail::fmt(vn.norms.get(kind))});

  if (results.size() > 1) {
    detail::CsvFile conv(out / "convergence.csv");
    conv.row({"cells", "variable", "norm", "error", "rate"});
    std::vector<int> cells;
    std::vector<double> hs;
    for (const auto& r : results) {
      cells.push_back(r.cells);
      hs.push_back(r.h);
    }
    for (std::size_t v = 0; v < results.front().norms.size(); ++v) {
      std::vector<double> errs;
      for (const auto& r : results) errs.push_back(r.norms[v].norms.get(spec.norm));
      for (const auto& row : convergence_table(cells, hs, errs))
        conv.row({std::to_string(row.cells), results.front().norms[v].variable, spec.norm, detail::fmt(row.error),
                  row.rate ? detail::fmt(*row.rate) : "n/a"});
    }
  }
  return results;
}

// ---------------------------------------------------------------------------
// Equilibrium profiles.

struct EquilibriumConfig {
  EosSpec eos;
  PotentialSpec potential;
  int nodes = 101;
  double xmin = 0.0, xmax = 1.0;
  std::string profile = "isothermal";  // or polytropic
  double T0 = 1.0;                     // isothermal temperature, or polytropic temperature at phi = 0
  double nu = 1.4;
  std::string anchor_kind = "pressure";
  long anchor_index = 0;
  double anchor_value = 1.0;
  std::string method = "discrete";  // discrete, reference
  int refinement = 10;
};

inline void apply_equilibrium_setting(EquilibriumConfig& c, const std::string& key, const std::string& value) {
  auto num = [&] { return detail::parse_number(key, value); };
  if (apply_physics_setting(c.eos, c.potential, key, value)) return;
  if (key == "nodes" || key == "nx")
    c.nodes = detail::parse_int(key, value);
  else if (key == "xmin")
    c.xmin = num();
  else if (key == "xmax")
    c.xmax = num();
  else if (key == "profile") {
    if (value != "isothermal" && value != "polytropic") throw ConfigError("profile must be isothermal or polytropic");
    c.profile = value;
  } else if (key == "T0")
    c.T0 = num();
  else if (key == "nu")
    c.nu = num();
  else if (key == "anchor.kind") {
    if (value != "pressure" && value != "density") throw ConfigError("anchor.kind must be pressure or density");
    c.anchor_kind = value;
  } else if (key == "anchor.index")
    c.anchor_index = static_cast<long>(num());
  else if (key == "anchor.value")
    c.anchor_value = num();
  else if (key == "method") {
    if (value != "discrete" && value != "reference") throw ConfigError("method must be discrete or reference");
    c.method = value;
  } else if (key == "refinement")
    c.refinement = detail::parse_int(key, value);
  else
    throw ConfigError("unknown equilibrium setting '" + key + "'");
}

inline HydrostaticProfile compute_equilibrium(const EquilibriumConfig& c) {
  if (c.nodes < 2) throw ConfigError("need at least 2 nodes");
  const Eos eos = c.eos.build();
  const Potential pot = c.potential.build();
  std::vector<double> x(static_cast<std::size_t>(c.nodes)), phi, T;
  for (int i = 0; i < c.nodes; ++i) x[static_cast<std::size_t>(i)] = c.xmin + (c.xmax - c.xmin) * i / (c.nodes - 1);
  double R = 1.0;
  if (const auto* g = std::get_if<IdealGas>(&eos.params())) R = g->R;
  const TemperatureProfile tp = c.profile == "isothermal" ? TemperatureProfile::isothermal(c.T0)
                                                          : TemperatureProfile::polytropic(pot, R, c.T0, c.nu, 0.0);
  for (double xi : x) {
    phi.push_back(pot(xi));
    T.push_back(tp.T(xi));
  }
  if (c.anchor_index < 0 || c.anchor_index >= c.nodes) throw ConfigError("anchor.index out of range");
  if (c.method == "reference") {
    const double xa = x[static_cast<std::size_t>(c.anchor_index)];
    const Anchor a = c.anchor_kind == "pressure" ? Anchor::pressure_at_x(xa, c.anchor_value)
                                                 : Anchor::density_at_x(xa, c.anchor_value);
    return ode_reference(eos, pot, tp, a, x, c.refinement);
  }
  const Anchor a = c.anchor_kind == "pressure" ? Anchor::pressure_at(c.anchor_index, c.anchor_value)
                                               : Anchor::density_at(c.anchor_index, c.anchor_value);
  return discrete_hydrostatic(eos, x, phi, T, a);
}

inline void write_equilibrium_csv(std::ostream& out, const EquilibriumConfig& c, const HydrostaticProfile& h) {
  out << "# provenance: " << to_string(h.provenance) << "\n";
  out << "# eos: " << c.eos.build().name() << " R=" << detail::fmt(c.eos.R) << " gamma=" << detail::fmt(c.eos.gamma)
      << " a=" << detail::fmt(c.eos.a) << " b=" << detail::fmt(c.eos.b) << " M=" << detail::fmt(c.eos.M)
      << " Ru=" << detail::fmt(c.eos.Ru) << " a_rad=" << detail::fmt(c.eos.a_rad) << "\n";
  out << "# potential: " << c.potential.kind << ", temperature: " << c.profile << "\n";
  out << "# anchor: " << c.anchor_kind << " " << detail::fmt(c.anchor_value) << " at index " << c.anchor_index << "\n";
  out << "x,rho,p,T\n";
  for (std::size_t i = 0; i < h.size(); ++i)
    out << detail::fmt(h.x[i]) << ',' << detail::fmt(h.rho[i]) << ',' << detail::fmt(h.p[i]) << ','
        << detail::fmt(h.T[i]) << '\n';
}

}  // namespace wbfv
