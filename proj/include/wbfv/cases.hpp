#pragma once
// Registry of named test problems, their initial-data builders, and error norms.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wbfv/eos.hpp"
#include "wbfv/error.hpp"
#include "wbfv/gravity.hpp"
#include "wbfv/hydrostatic.hpp"
#include "wbfv/solver1d.hpp"
#include "wbfv/solver2d.hpp"

namespace wbfv {

// ---------------------------------------------------------------------------
// Norms and convergence tables.

struct Norms {
  double l1 = 0.0, l2 = 0.0, linf = 0.0;

  [[nodiscard]] double get(const std::string& kind) const {
    if (kind == "l1") return l1;
    if (kind == "l2") return l2;
    if (kind == "linf") return linf;
    throw ConfigError("unknown norm '" + kind + "'");
  }
};

/// Weighted averages sum(w|e|)/sum(w) and sqrt(sum(w e^2)/sum(w)); Linf ignores weights
/// except that zero-weight entries are skipped.
inline Norms norms_of(const std::vector<double>& e, const std::vector<double>& w) {
  if (e.size() != w.size()) throw ConfigError("norms: shape mismatch");
  Norms n;
  double wsum = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (w[k] == 0.0) continue;
    const double a = std::abs(e[k]);
    n.l1 += w[k] * a;
    n.l2 += w[k] * a * a;
    n.linf = std::max(n.linf, a);
    wsum += w[k];
  }
  if (wsum > 0.0) {
    n.l1 /= wsum;
    n.l2 = std::sqrt(n.l2 / wsum);
  }
  return n;
}

struct VariableNorms {
  std::string variable;
  Norms norms;
};

template <int D>
std::vector<std::string> variable_names() {
  if constexpr (D == 1)
    return {"rho", "u", "p"};
  else
    return {"rho", "u", "v", "p"};
}

/// Per-variable norms of (field - reference) over the primitive variables.
template <int D>
std::vector<VariableNorms> error_norms(const std::vector<Prim<D>>& field, const std::vector<Prim<D>>& reference,
                                       const std::vector<double>& weights) {
  if (field.size() != reference.size() || field.size() != weights.size())
    throw ConfigError("error_norms: shape mismatch");
  const auto names = variable_names<D>();
  std::vector<VariableNorms> out;
  std::vector<double> e(field.size());
  for (int c = 0; c < Prim<D>::size; ++c) {
    for (std::size_t k = 0; k < field.size(); ++k) e[k] = field[k][c] - reference[k][c];
    out.push_back({names[static_cast<std::size_t>(c)], norms_of(e, weights)});
  }
  return out;
}

struct ConvergenceRow {
  int cells = 0;
  double h = 0.0;
  double error = 0.0;
  std::optional<double> rate;  // empty on the first row or when the coarse error is zero
};

/// rate_k = log(e_{k-1}/e_k) / log(h_{k-1}/h_k).
inline std::vector<ConvergenceRow> convergence_table(const std::vector<int>& cells, const std::vector<double>& h,
                                                     const std::vector<double>& error) {
  if (cells.size() < 2 || h.size() != cells.size() || error.size() != cells.size())
    throw ConfigError("convergence_table needs at least two matching rows");
  std::vector<ConvergenceRow> rows;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    ConvergenceRow r{cells[k], h[k], error[k], std::nullopt};
    if (k > 0 && error[k - 1] > 0.0 && error[k] > 0.0) r.rate = std::log(error[k - 1] / error[k]) / std::log(h[k - 1] / h[k]);
    rows.push_back(r);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Case description.

struct EosSpec {
  std::string variant = "ideal";
  double R = 1.0, gamma = 1.4, a = 0.0, b = 0.0, M = 1.0, Ru = 1.0, a_rad = 0.0;

  [[nodiscard]] Eos build() const {
    if (variant == "ideal") return Eos(IdealGas{R, gamma});
    if (variant == "vdw") return Eos(VanDerWaals{a, b, M, Ru, gamma});
    if (variant == "radiation") return Eos(IdealRadiation{R, gamma, a_rad});
    throw ConfigError("unknown eos.variant '" + variant + "'");
  }
};

struct PotentialSpec {
  std::string kind = "linear";
  double gx = 1.0, gy = 0.0, k = 1.0, amplitude = 1.0, wavelength = 1.0, g = 1.0, xc = 0.0, yc = 0.0;
  std::string file;  // CSV of x,phi for kind = nodal

  [[nodiscard]] Potential build() const {
    if (kind == "constant") return Potential::constant();
    if (kind == "linear") return Potential::linear(gx, gy);
    if (kind == "quadratic") return Potential::quadratic(k);
    if (kind == "sine") return Potential::sine(amplitude, wavelength);
    if (kind == "radial") return Potential::radial(g, xc, yc);
    if (kind == "constant-g-y") return Potential::constant_g_y(g);
    if (kind == "nodal") return load_nodal(file);
    throw ConfigError("unknown potential '" + kind + "'");
  }

  static Potential load_nodal(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open potential file '" + path + "'");
    std::vector<double> xs, ps;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream ss(line);
      double x, p;
      if (ss >> x >> p) {
        xs.push_back(x);
        ps.push_back(p);
      }
    }
    return Potential::nodal(xs, ps);
  }
};

struct CaseSpec {
  std::string name;
  std::string summary;
  int dim = 1;
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  int nx = 100, ny = 1;  // cells in 1D, nodes per direction in 2D
  std::vector<int> grids;
  double t_final = 1.0;
  long max_steps = -1;
  double cfl = 0.4;
  SourceKind scheme = SourceKind::WellBalanced;
  ReconConfig recon{};
  FluxKind flux = FluxKind::Hllc;
  Boundary left = Boundary::Transmissive, right = Boundary::Transmissive;
  Boundary bottom = Boundary::Transmissive, top = Boundary::Transmissive;
  EosSpec eos;
  PotentialSpec potential;
  std::string initial;            // how the initial data is built
  std::string variant;            // "exact" or "discrete" for equilibrium cases
  std::string reference = "initial";  // norms against "initial" data or the "exact" solution
  std::string norm = "l1";
  std::vector<double> snapshots;
  long every = 10;  // time-series sampling interval in steps
  std::map<std::string, double> constants;

  [[nodiscard]] double constant(const std::string& key) const {
    const auto it = constants.find(key);
    if (it == constants.end()) throw ConfigError("case '" + name + "' has no constant '" + key + "'");
    return it->second;
  }

  [[nodiscard]] SchemeConfig scheme_config() const {
    SchemeConfig c;
    c.source = scheme;
    c.flux = flux;
    c.recon = recon;
    c.cfl = cfl;
    return c;
  }
};

inline std::string to_string(Boundary b) {
  switch (b) {
    case Boundary::Periodic: return "periodic";
    case Boundary::Wall: return "wall";
    case Boundary::Transmissive: return "transmissive";
    case Boundary::DirichletExact: return "dirichlet_exact";
  }
  return "unknown";
}

inline Boundary parse_boundary(const std::string& s) {
  if (s == "periodic") return Boundary::Periodic;
  if (s == "wall") return Boundary::Wall;
  if (s == "transmissive") return Boundary::Transmissive;
  if (s == "dirichlet_exact") return Boundary::DirichletExact;
  throw ConfigError("unknown boundary '" + s + "'");
}

inline std::string to_string(SourceKind k) { return k == SourceKind::WellBalanced ? "wb" : "nwb"; }

inline SourceKind parse_scheme(const std::string& s) {
  if (s == "wb") return SourceKind::WellBalanced;
  if (s == "nwb") return SourceKind::CentralDifference;
  throw ConfigError("unknown scheme '" + s + "' (expected wb or nwb)");
}

namespace detail {

inline double parse_number(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("value for '" + key + "' is not a number: '" + v + "'");
  }
}

inline int parse_int(const std::string& key, const std::string& v) {
  const double d = parse_number(key, v);
  if (d != std::floor(d) || d < 1 || d > 1e7) throw ConfigError("value for '" + key + "' must be a positive integer");
  return static_cast<int>(d);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

/// Equation-of-state and potential keys (eos.*, potential*). Returns false for other keys.
inline bool apply_physics_setting(EosSpec& eos, PotentialSpec& pot, const std::string& key, const std::string& value) {
  const std::map<std::string, double*> numbers = {
      {"eos.R", &eos.R},           {"eos.gamma", &eos.gamma},         {"eos.a", &eos.a},
      {"eos.b", &eos.b},           {"eos.M", &eos.M},                 {"eos.Ru", &eos.Ru},
      {"eos.a_rad", &eos.a_rad},   {"potential.gx", &pot.gx},         {"potential.gy", &pot.gy},
      {"potential.k", &pot.k},     {"potential.amplitude", &pot.amplitude},
      {"potential.wavelength", &pot.wavelength},                      {"potential.g", &pot.g},
      {"potential.xc", &pot.xc},   {"potential.yc", &pot.yc}};
  if (const auto it = numbers.find(key); it != numbers.end()) {
    *it->second = detail::parse_number(key, value);
  } else if (key == "eos.variant") {
    eos.variant = value;
  } else if (key == "potential" || key == "potential.kind") {
    pot.kind = value;
  } else if (key == "potential.file") {
    pot.file = value;
  } else {
    return false;
  }
  return true;
}

/// Apply one `key = value` setting. Keys mirror the resolved-config output.
inline void apply_setting(CaseSpec& s, const std::string& key, const std::string& value) {
  using detail::parse_int;
  using detail::parse_number;
  auto num = [&] { return parse_number(key, value); };
  if (key == "case") {
    if (value != s.name) throw ConfigError("setting 'case' cannot change the case");
  } else if (key == "nx") {
    s.nx = parse_int(key, value);
  } else if (key == "ny") {
    s.ny = parse_int(key, value);
  } else if (key == "grids") {
    s.grids.clear();
    for (const auto& g : detail::split(value, ',')) s.grids.push_back(parse_int(key, g));
    if (s.grids.empty()) throw ConfigError("grids must not be empty");
  } else if (key == "xmin") {
    s.xmin = num();
  } else if (key == "xmax") {
    s.xmax = num();
  } else if (key == "ymin") {
    s.ymin = num();
  } else if (key == "ymax") {
    s.ymax = num();
  } else if (key == "tfinal" || key == "t_final") {
    s.t_final = num();
    if (!(s.t_final >= 0.0)) throw ConfigError("tfinal must be non-negative");
  } else if (key == "max_steps") {
    s.max_steps = static_cast<long>(num());
  } else if (key == "cfl") {
    s.cfl = num();
    if (!(s.cfl > 0.0 && s.cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
  } else if (key == "scheme") {
    s.scheme = parse_scheme(value);
  } else if (key == "flux" || key == "flux.kind") {
    if (value != "hllc") throw ConfigError("unknown flux '" + value + "' (only hllc is available)");
    s.flux = FluxKind::Hllc;
  } else if (key == "kappa" || key == "recon.kappa") {
    s.recon.kappa = num();
    s.recon.validate();
  } else if (key == "recon" || key == "recon.scheme") {
    if (value == "muscl_minmod")
      s.recon.scheme = ReconScheme::MusclMinmod;
    else if (value == "first_order")
      s.recon.scheme = ReconScheme::FirstOrder;
    else
      throw ConfigError("unknown recon.scheme '" + value + "'");
  } else if (key == "bc.left") {
    s.left = parse_boundary(value);
  } else if (key == "bc.right") {
    s.right = parse_boundary(value);
  } else if (key == "bc.bottom") {
    s.bottom = parse_boundary(value);
  } else if (key == "bc.top") {
    s.top = parse_boundary(value);
  } else if (apply_physics_setting(s.eos, s.potential, key, value)) {
  } else if (key == "variant") {
    if (value != "exact" && value != "discrete") throw ConfigError("variant must be exact or discrete");
    s.variant = value;
  } else if (key == "norm") {
    if (value != "l1" && value != "l2" && value != "linf") throw ConfigError("norm must be l1, l2 or linf");
    s.norm = value;
  } else if (key == "every") {
    s.every = static_cast<long>(parse_int(key, value));
  } else if (key == "snapshots") {
    s.snapshots.clear();
    for (const auto& t : detail::split(value, ',')) s.snapshots.push_back(parse_number(key, t));
  } else if (s.constants.count(key)) {
    s.constants[key] = num();
  } else {
    throw ConfigError("unknown setting '" + key + "' for case '" + s.name + "'");
  }
}

/// Every setting of a case as `key = value` lines; feeding them back through
/// apply_setting reproduces the case.
inline std::vector<std::pair<std::string, std::string>> settings_of(const CaseSpec& s) {
  using detail::fmt;
  std::vector<std::pair<std::string, std::string>> kv;
  auto join = [](const auto& v, auto f) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + f(v[i]);
    return out;
  };
  kv.emplace_back("case", s.name);
  kv.emplace_back("nx", std::to_string(s.nx));
  if (s.dim == 2) kv.emplace_back("ny", std::to_string(s.ny));
  if (!s.grids.empty()) kv.emplace_back("grids", join(s.grids, [](int g) { return std::to_string(g); }));
  kv.emplace_back("xmin", fmt(s.xmin));
  kv.emplace_back("xmax", fmt(s.xmax));
  if (s.dim == 2) {
    kv.emplace_back("ymin", fmt(s.ymin));
    kv.emplace_back("ymax", fmt(s.ymax));
  }
  kv.emplace_back("tfinal", fmt(s.t_final));
  kv.emplace_back("max_steps", std::to_string(s.max_steps));
  kv.emplace_back("cfl", fmt(s.cfl));
  kv.emplace_back("scheme", to_string(s.scheme));
  kv.emplace_back("flux", "hllc");
  kv.emplace_back("kappa", fmt(s.recon.kappa));
  kv.emplace_back("recon", s.recon.scheme == ReconScheme::MusclMinmod ? "muscl_minmod" : "first_order");
  kv.emplace_back("bc.left", to_string(s.left));
  kv.emplace_back("bc.right", to_string(s.right));
  if (s.dim == 2) {
    kv.emplace_back("bc.bottom", to_string(s.bottom));
    kv.emplace_back("bc.top", to_string(s.top));
  }
  kv.emplace_back("eos.variant", s.eos.variant);
  kv.emplace_back("eos.R", fmt(s.eos.R));
  kv.emplace_back("eos.gamma", fmt(s.eos.gamma));
  kv.emplace_back("eos.a", fmt(s.eos.a));
  kv.emplace_back("eos.b", fmt(s.eos.b));
  kv.emplace_back("eos.M", fmt(s.eos.M));
  kv.emplace_back("eos.Ru", fmt(s.eos.Ru));
  kv.emplace_back("eos.a_rad", fmt(s.eos.a_rad));
  kv.emplace_back("potential", s.potential.kind);
  kv.emplace_back("potential.gx", fmt(s.potential.gx));
  kv.emplace_back("potential.gy", fmt(s.potential.gy));
  kv.emplace_back("potential.k", fmt(s.potential.k));
  kv.emplace_back("potential.amplitude", fmt(s.potential.amplitude));
  kv.emplace_back("potential.wavelength", fmt(s.potential.wavelength));
  kv.emplace_back("potential.g", fmt(s.potential.g));
  kv.emplace_back("potential.xc", fmt(s.potential.xc));
  kv.emplace_back("potential.yc", fmt(s.potential.yc));
  if (!s.potential.file.empty()) kv.emplace_back("potential.file", s.potential.file);
  if (!s.variant.empty()) kv.emplace_back("variant", s.variant);
  kv.emplace_back("norm", s.norm);
  kv.emplace_back("every", std::to_string(s.every));
  if (!s.snapshots.empty()) kv.emplace_back("snapshots", join(s.snapshots, [](double t) { return fmt(t); }));
  for (const auto& [k, v] : s.constants) kv.emplace_back(k, fmt(v));
  return kv;
}

// ---------------------------------------------------------------------------
// Registry.

namespace detail {

inline CaseSpec base_1d(std::string name, std::string summary, double t_final, int nx, Boundary bc) {
  CaseSpec s;
  s.name = std::move(name);
  s.summary = std::move(summary);
  s.dim = 1;
  s.t_final = t_final;
  s.nx = nx;
  s.left = s.right = bc;
  return s;
}

inline CaseSpec base_2d(std::string name, std::string summary, double lo, double hi, int n, double t_final,
                        Boundary bc) {
  CaseSpec s;
  s.name = std::move(name);
  s.summary = std::move(summary);
  s.dim = 2;
  s.xmin = s.ymin = lo;
  s.xmax = s.ymax = hi;
  s.nx = s.ny = n;
  s.t_final = t_final;
  s.left = s.right = s.bottom = s.top = bc;
  return s;
}

inline std::vector<CaseSpec> make_registry() {
  std::vector<CaseSpec> r;
  const auto T = Boundary::Transmissive;
  const auto W = Boundary::Wall;
  const auto P = Boundary::Periodic;

  {
    auto s = base_1d("isothermal_wb", "isothermal ideal-gas equilibrium rho = p = exp(-phi); potential linear, quadratic or sine", 2.0, 100, T);
    s.grids = {100, 1000};
    s.initial = "closed_form";
    r.push_back(s);
  }
  {
    auto s = base_1d("isothermal_pert", "isothermal equilibrium, phi = x, with a Gaussian pressure pulse of amplitude eta at x = 0.5", 0.25, 200, T);
    s.initial = "equilibrium_perturbation";
    s.constants = {{"eta", 1e-5}, {"x0", 0.5}, {"width", 100.0}};
    r.push_back(s);
  }
  {
    auto s = base_1d("xing_steady", "periodic isothermal gas in a sine potential relaxing to steady state from a pressure pulse", 1e30, 64, P);
    s.xmax = 64.0;
    s.max_steps = 100000;
    s.eos.gamma = 5.0 / 3.0;
    s.potential.kind = "sine";
    s.potential.amplitude = -0.02 * 64.0 / (2.0 * std::numbers::pi);
    s.potential.wavelength = 64.0;
    s.initial = "equilibrium_perturbation";
    s.constants = {{"T0", 0.6866}, {"eta", 1e-3}, {"x0", 32.0}, {"width", 100.0}, {"pulse_average", 1.0}};
    r.push_back(s);
  }
  {
    auto s = base_1d("polytropic", "polytropic ideal-gas equilibrium between walls, exact or discrete initial data, optional pressure pulse", 2.0, 100, W);
    s.grids = {100, 1000};
    s.initial = "equilibrium";
    s.variant = "discrete";
    s.constants = {{"nu", 1.4}, {"eta", 0.0}, {"x0", 0.5}, {"width", 100.0}};
    r.push_back(s);
  }
  {
    auto s = base_1d("vdw_hydro", "isothermal van der Waals equilibrium (T = 1, rho = 1 at x = 0), exact or discrete initial data", 2.0, 100, T);
    s.grids = {100, 1000};
    s.eos = EosSpec{"vdw", 1.0, 1.4, 0.4, 0.001, 1.0, 1.0, 0.0};
    s.initial = "equilibrium";
    s.variant = "discrete";
    s.constants = {{"T0", 1.0}, {"rho0", 1.0}, {"eta", 0.0}, {"x0", 0.5}, {"width", 100.0}};
    r.push_back(s);
  }
  {
    auto s = base_1d("vdw_pert", "discrete van der Waals equilibrium with a Gaussian pressure pulse of amplitude eta at x = 0.5", 0.2, 100, T);
    s.grids = {100, 1000};
    s.eos = EosSpec{"vdw", 1.0, 1.4, 0.4, 0.001, 1.0, 1.0, 0.0};
    s.initial = "equilibrium_perturbation";
    s.variant = "discrete";
    s.constants = {{"T0", 1.0}, {"rho0", 1.0}, {"eta", 1e-3}, {"x0", 0.5}, {"width", 100.0}};
    r.push_back(s);
  }
  {
    auto s = base_1d("sod_gravity", "Sod shock tube between walls in the potential phi = x", 0.2, 200, W);
    s.grids = {200, 2000};
    s.initial = "riemann";
    s.constants = {{"rho_l", 1.0}, {"p_l", 1.0}, {"rho_r", 0.125}, {"p_r", 0.1}};
    r.push_back(s);
  }
  {
    auto s = base_1d("contact_gravity", "stationary contact (density 1 | 10, p = 1) between walls in the potential phi = x", 0.6, 200, W);
    s.grids = {200, 2000};
    s.initial = "riemann";
    s.constants = {{"rho_l", 1.0}, {"p_l", 1.0}, {"rho_r", 10.0}, {"p_r", 1.0}};
    r.push_back(s);
  }
  {
    auto s = base_2d("iso2d_pert", "2D isothermal equilibrium in phi = x + y with a pressure pulse at (0.3, 0.3)", 0.0, 1.0, 51, 0.15, T);
    s.potential.gy = 1.0;
    s.initial = "equilibrium_perturbation";
    s.constants = {{"rho0", 1.21}, {"p0", 1.0}, {"eta", 1e-3}, {"xc", 0.3}, {"yc", 0.3}};
    r.push_back(s);
  }
  {
    auto s = base_2d("poly2d_pert", "2D polytropic equilibrium in phi = x + y with a pressure pulse at (0.3, 0.3)", 0.0, 1.0, 51, 0.15, T);
    s.potential.gy = 1.0;
    s.initial = "equilibrium_perturbation";
    s.constants = {{"eta", 1e-3}, {"xc", 0.3}, {"yc", 0.3}};
    r.push_back(s);
  }
  {
    auto s = base_2d("mms2d", "manufactured travelling-wave solution in phi = x + y with exact boundary data", 0.0, 2.0, 100, 0.1, Boundary::DirichletExact);
    s.potential.gy = 1.0;
    s.grids = {100, 200, 400};
    s.initial = "exact";
    s.reference = "exact";
    s.norm = "l2";
    s.constants = {{"u0", 1.0}, {"v0", 1.0}, {"p0", 4.5}};
    r.push_back(s);
  }
  {
    auto s = base_2d("radial_iso", "isothermal equilibrium rho = p = exp(-r) in the radial potential phi = r", -1.0, 1.0, 50, 1.0, T);
    s.potential.kind = "radial";
    s.grids = {50, 100};
    s.initial = "closed_form";
    r.push_back(s);
  }
  {
    auto s = base_2d("radial_poly", "polytropic equilibrium (nu = 1.2) in the radial potential phi = r", -1.0, 1.0, 51, 50.0, T);
    s.potential.kind = "radial";
    s.grids = {51, 101};
    s.initial = "closed_form";
    s.constants = {{"nu", 1.2}};
    r.push_back(s);
  }
  {
    auto s = base_2d("radial_vdw", "van der Waals radial equilibrium interpolated from a 1D reference in r", -1.0, 1.0, 51, 1.0, T);
    s.potential.kind = "radial";
    s.eos = EosSpec{"vdw", 1.0, 1.4, 0.4, 0.001, 1.0, 1.0, 0.0};
    s.initial = "radial_reference";
    s.constants = {{"T0", 1.0}, {"rho0", 1.0}};
    r.push_back(s);
  }
  {
    auto s = base_2d("radial_rt", "radial Rayleigh-Taylor: heavy shell over light core with a wavy interface", -1.0, 1.0, 121, 5.0, T);
    s.potential.kind = "radial";
    s.initial = "piecewise";
    s.constants = {{"r0", 0.6}, {"eta", 0.02}, {"drho", 0.1}, {"k", 20.0}};
    r.push_back(s);
  }
  {
    auto s = base_2d("rising_bubble", "warm bubble in a neutral atmosphere (SI units, walls)", 0.0, 1000.0, 101, 150.0, W);
    s.eos.R = 287.058;
    s.potential.kind = "constant-g-y";
    s.potential.g = 9.8;
    s.initial = "equilibrium_perturbation";
    s.constants = {{"p0", 1e5}, {"theta0", 300.0}, {"thetac", 0.5}, {"rc", 250.0}, {"xc", 500.0}, {"yc", 350.0}};
    r.push_back(s);
  }
  {
    auto s = base_2d("igw", "inertia-gravity wave in a stratified channel, periodic in x, walls in y (SI units)", 0.0, 1.0, 301, 750.0, W);
    s.xmax = 300000.0;
    s.ymax = 10000.0;
    s.ny = 13;
    s.left = s.right = P;
    s.eos.R = 287.058;
    s.potential.kind = "constant-g-y";
    s.potential.g = 9.8;
    s.initial = "equilibrium_perturbation";
    s.constants = {{"p0", 1e5}, {"theta0", 300.0}, {"N", 0.01}, {"u0", 20.0}, {"thetac", 0.01},
                   {"hc", 10000.0}, {"xc", 100000.0}, {"ac", 5000.0}};
    r.push_back(s);
  }
  return r;
}

}  // namespace detail

inline const std::vector<CaseSpec>& case_registry() {
  static const std::vector<CaseSpec> registry = detail::make_registry();
  return registry;
}

inline CaseSpec find_case(const std::string& name) {
  for (const auto& c : case_registry())
    if (c.name == name) return c;
  throw ConfigError("unknown case '" + name + "' (see list-cases)");
}

inline std::string list_cases_text() {
  std::string out;
  for (const auto& c : case_registry()) {
    char head[64];
    std::snprintf(head, sizeof head, "%-16s %dD  ", c.name.c_str(), c.dim);
    out += head + c.summary + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Initial data.

struct Setup1D {
  CaseSpec spec;
  Grid1D grid;
  Eos eos;
  Potential potential;
  Solver1D::State q0;
  std::vector<Prim<1>> background;  // equilibrium the initial data perturbs (equal to it when unperturbed)
};

struct Setup2D {
  CaseSpec spec;
  Grid2D grid;
  Eos eos;
  Potential potential;
  Solver2D::State q0;
  std::vector<Prim<2>> background;
  Solver2D::ExactFn exact;  // set when an exact solution is known for all t
  double p_ref = 0.0;       // reference pressure of the potential temperature diagnostic, 0 if unused
};

inline Solver1D make_solver(const Setup1D& s) { return Solver1D(s.grid, s.eos, s.potential, s.spec.scheme_config()); }

inline Solver2D make_solver(const Setup2D& s) {
  return Solver2D(s.grid, s.eos, s.potential, s.spec.scheme_config(), s.exact);
}

namespace detail {

inline double gaussian(double x, double x0, double width) { return std::exp(-width * (x - x0) * (x - x0)); }

/// Mean of exp(-width (s - x0)^2) over [x - h/2, x + h/2].
inline double gaussian_cell_average(double x, double h, double x0, double width) {
  const double k = std::sqrt(width);
  const double a = k * (x - 0.5 * h - x0), b = k * (x + 0.5 * h - x0);
  return 0.5 * std::sqrt(std::numbers::pi) * (std::erf(b) - std::erf(a)) / (k * h);
}

/// Exact isothermal profile in the potential of the case.
inline void fill_isothermal(const Potential& pot, const std::vector<double>& x, double RT, std::vector<Prim<1>>& v) {
  v.clear();
  for (double xi : x) {
    const double rho = std::exp(-pot(xi) / RT);
    v.push_back({rho, {0.0}, rho * RT});
  }
}

/// Nearest cell to a coordinate.
inline long nearest(const std::vector<double>& x, double x0) {
  long best = 0;
  for (std::size_t i = 1; i < x.size(); ++i)
    if (std::abs(x[i] - x0) < std::abs(x[static_cast<std::size_t>(best)] - x0)) best = static_cast<long>(i);
  return best;
}

inline std::vector<Prim<1>> profile_to_prims(const HydrostaticProfile& h) {
  std::vector<Prim<1>> v;
  for (std::size_t i = 0; i < h.size(); ++i) v.push_back({h.rho[i], {0.0}, h.p[i]});
  return v;
}

}  // namespace detail

/// Isothermal van der Waals equilibrium at the points x: the reference solution
/// has density rho0 at x = 0; the discrete one matches it at the point nearest x = 0.
inline HydrostaticProfile vdw_equilibrium(const Eos& eos, const Potential& pot, const std::vector<double>& x,
                                          double T0, double rho0, bool discrete) {
  const auto tp = TemperatureProfile::isothermal(T0);
  // Integrate outward from x = 0 on a grid that contains it.
  std::vector<double> xs = x;
  const bool has_zero = std::find(xs.begin(), xs.end(), 0.0) != xs.end();
  if (!has_zero) {
    xs.push_back(0.0);
    std::sort(xs.begin(), xs.end());
  }
  HydrostaticProfile ref = ode_reference(eos, pot, tp, Anchor::density_at_x(0.0, rho0), xs, 10);
  if (!has_zero) {
    const auto z = static_cast<std::size_t>(std::find(xs.begin(), xs.end(), 0.0) - xs.begin());
    for (auto* v : {&ref.x, &ref.rho, &ref.p, &ref.T}) v->erase(v->begin() + static_cast<std::ptrdiff_t>(z));
  }
  if (!discrete) return ref;
  std::vector<double> phi, T(x.size(), T0);
  for (double xi : x) phi.push_back(pot(xi));
  const long a = detail::nearest(x, 0.0);
  return discrete_hydrostatic(eos, x, phi, T, Anchor::density_at(a, ref.rho[static_cast<std::size_t>(a)]));
}

/// Polytropic ideal-gas equilibrium T = 1 - (nu-1)/nu phi, rho = T^(1/(nu-1)) (R = 1 scaling with R T),
/// either exact or discrete. The discrete profile matches the exact pressure at the last point.
inline HydrostaticProfile polytropic_equilibrium(const Eos& eos, const Potential& pot, const std::vector<double>& x,
                                                 double nu, bool discrete) {
  const auto* g = std::get_if<IdealGas>(&eos.params());
  if (!g) throw ConfigError("polytropic equilibrium needs an ideal gas");
  const double R = g->R;
  // R T = 1 - (nu-1)/nu phi, anchored at phi = 0 with rho = 1.
  const auto tp = TemperatureProfile::polytropic(pot, R, 1.0 / R, nu, 0.0);
  HydrostaticProfile exact = *closed_form_hydrostatic(eos, pot, tp, Anchor::density_at_x(0.0, 1.0), x);
  if (!discrete) return exact;
  std::vector<double> phi;
  for (double xi : x) phi.push_back(pot(xi));
  const long a = static_cast<long>(x.size()) - 1;
  return discrete_hydrostatic(eos, x, phi, exact.T, Anchor::pressure_at(a, exact.p.back()));
}

inline Setup1D build_1d(const CaseSpec& spec) {
  if (spec.dim != 1) throw ConfigError("case '" + spec.name + "' is two-dimensional");
  Setup1D s{spec, Grid1D(spec.nx, spec.xmin, spec.xmax, spec.left, spec.right), spec.eos.build(),
            spec.potential.build(), {}, {}};
  const auto x = s.grid.centers();
  std::vector<Prim<1>> v;
  const std::string& n = spec.name;

  if (n == "isothermal_wb" || n == "isothermal_pert") {
    const double R = std::get<IdealGas>(s.eos.params()).R;
    detail::fill_isothermal(s.potential, x, R, v);
  } else if (n == "xing_steady") {
    const double RT = std::get<IdealGas>(s.eos.params()).R * spec.constant("T0");
    detail::fill_isothermal(s.potential, x, RT, v);
  } else if (n == "polytropic") {
    v = detail::profile_to_prims(polytropic_equilibrium(s.eos, s.potential, x, spec.constant("nu"), spec.variant == "discrete"));
  } else if (n == "vdw_hydro" || n == "vdw_pert") {
    v = detail::profile_to_prims(vdw_equilibrium(s.eos, s.potential, x, spec.constant("T0"), spec.constant("rho0"),
                                                 spec.variant == "discrete"));
  } else if (n == "sod_gravity" || n == "contact_gravity") {
    const double mid = 0.5 * (spec.xmin + spec.xmax);
    for (double xi : x)
      v.push_back(xi < mid ? Prim<1>{spec.constant("rho_l"), {0.0}, spec.constant("p_l")}
                           : Prim<1>{spec.constant("rho_r"), {0.0}, spec.constant("p_r")});
  } else {
    throw ConfigError("case '" + n + "' has no 1D builder");
  }
  s.background = v;
  if (spec.constants.count("eta")) {
    const double eta = spec.constant("eta");
    const double x0 = spec.constant("x0"), width = spec.constant("width");
    // Cell averages when asked for: a pulse narrower than a cell would otherwise vanish.
    const bool average = spec.constants.count("pulse_average") && spec.constant("pulse_average") != 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      v[i].p += eta * (average ? detail::gaussian_cell_average(x[i], s.grid.dx, x0, width)
                               : detail::gaussian(x[i], x0, width));
  }
  s.q0 = to_conserved(v, s.eos);
  return s;
}

/// Exact solution of the manufactured 2D problem.
inline Solver2D::ExactFn mms_exact(const Potential& pot, double u0, double v0, double p0) {
  return [pot, u0, v0, p0](double x, double y, double t) {
    const double arg = pot(x, y) - t * (u0 + v0);
    const double pi = std::numbers::pi;
    return Prim<2>{1.0 + 0.2 * std::sin(pi * arg), {u0, v0}, p0 + t * (u0 + v0) - pot(x, y) + 0.2 * std::cos(pi * arg) / pi};
  };
}

/// Potential temperature T (p_ref/p)^((gamma-1)/gamma).
inline double potential_temperature(const Eos& eos, double rho, double p, double p_ref) {
  const double T = temperature(eos, rho, p);
  const double g = eos.gamma();
  return T * std::pow(p_ref / p, (g - 1.0) / g);
}

inline Setup2D build_2d(const CaseSpec& spec) {
  if (spec.dim != 2) throw ConfigError("case '" + spec.name + "' is one-dimensional");
  Setup2D s{spec,
            Grid2D(spec.nx, spec.ny, spec.xmin, spec.xmax, spec.ymin, spec.ymax, spec.left, spec.right, spec.bottom, spec.top),
            spec.eos.build(),
            spec.potential.build(),
            {},
            {},
            {},
            0.0};
  const Grid2D& g = s.grid;
  const std::string& n = spec.name;
  std::vector<Prim<2>> bg(g.size()), v;
  auto each = [&](auto f) {
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) f(i, j, g.x(i), g.y(j), bg[g.index(i, j)]);
  };

  if (n == "iso2d_pert") {
    const double rho0 = spec.constant("rho0"), p0 = spec.constant("p0");
    each([&](int, int, double x, double y, Prim<2>& b) {
      const double e = std::exp(-rho0 * s.potential(x, y) / p0);
      b = {rho0 * e, {0.0, 0.0}, p0 * e};
    });
  } else if (n == "poly2d_pert") {
    const double gm = s.eos.gamma();
    each([&](int, int, double x, double y, Prim<2>& b) {
      const double rho = std::pow(1.0 - (gm - 1.0) / gm * s.potential(x, y), 1.0 / (gm - 1.0));
      b = {rho, {0.0, 0.0}, std::pow(rho, gm)};
    });
  } else if (n == "mms2d") {
    s.exact = mms_exact(s.potential, spec.constant("u0"), spec.constant("v0"), spec.constant("p0"));
    each([&](int, int, double x, double y, Prim<2>& b) { b = s.exact(x, y, 0.0); });
  } else if (n == "radial_iso") {
    each([&](int, int, double x, double y, Prim<2>& b) {
      const double e = std::exp(-s.potential(x, y));
      b = {e, {0.0, 0.0}, e};
    });
  } else if (n == "radial_poly") {
    const double nu = spec.constant("nu");
    each([&](int, int, double x, double y, Prim<2>& b) {
      const double rho = std::pow(1.0 - (nu - 1.0) / nu * s.potential(x, y), 1.0 / (nu - 1.0));
      b = {rho, {0.0, 0.0}, std::pow(rho, nu)};
    });
  } else if (n == "radial_vdw") {
    // 1D reference in r on [0, rmax], interpolated by cubics in r.
    const double rmax = std::hypot(std::max(std::abs(spec.xmin), std::abs(spec.xmax)),
                                   std::max(std::abs(spec.ymin), std::abs(spec.ymax)));
    const int m = 4 * std::max(g.nx, g.ny) + 1;
    std::vector<double> rs(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) rs[static_cast<std::size_t>(k)] = rmax * k / (m - 1);
    const Potential radial1d = Potential::linear(spec.potential.g);
    const auto ref = ode_reference(s.eos, radial1d, TemperatureProfile::isothermal(spec.constant("T0")),
                                   Anchor::density_at_x(0.0, spec.constant("rho0")), rs, 10);
    each([&](int, int, double x, double y, Prim<2>& b) {
      const double r = std::hypot(x - spec.potential.xc, y - spec.potential.yc);
      const double rho = cubic_interpolate(rs, ref.rho, r);
      b = {rho, {0.0, 0.0}, pressure(s.eos, rho, spec.constant("T0"))};
    });
  } else if (n == "radial_rt") {
    const double r0 = spec.constant("r0"), eta = spec.constant("eta"), drho = spec.constant("drho"),
                 k = spec.constant("k");
    const double alpha = std::exp(-r0) / (std::exp(-r0) + drho);
    each([&](int, int, double x, double y, Prim<2>& b) {
      const double r = std::hypot(x - spec.potential.xc, y - spec.potential.yc);
      const double th = std::atan2(y - spec.potential.yc, x - spec.potential.xc);
      const double ri = r0 * (1.0 + eta * std::cos(k * th));
      const double outer = std::exp(-r / alpha + r0 * (1.0 - alpha) / alpha);
      const double p = r <= r0 ? std::exp(-r) : outer;
      const double rho = r <= ri ? std::exp(-r) : outer / alpha;
      b = {rho, {0.0, 0.0}, p};
    });
  } else if (n == "rising_bubble" || n == "igw") {
    const bool bubble = n == "rising_bubble";
    const double p0 = spec.constant("p0"), th0 = spec.constant("theta0");
    const double gm = s.eos.gamma(), R = spec.eos.R, grav = spec.potential.g;
    const double N2 = bubble ? 0.0 : spec.constant("N") * spec.constant("N");
    // Background potential temperature and Exner pressure along y.
    auto theta_bar = [&](double y) { return bubble ? th0 : th0 * std::exp(N2 * y / grav); };
    auto exner = [&](double y) {
      if (bubble) return 1.0 - (gm - 1.0) * grav * y / (gm * R * th0);
      return 1.0 + (gm - 1.0) * grav * grav / (gm * R * th0 * N2) * (std::exp(-N2 * y / grav) - 1.0);
    };
    std::vector<double> ys, phi, T;
    for (int j = 0; j < g.ny; ++j) {
      ys.push_back(g.y(j));
      phi.push_back(s.potential(0.0, g.y(j)));
      T.push_back(theta_bar(g.y(j)) * exner(g.y(j)));
    }
    const auto col = discrete_hydrostatic(s.eos, ys, phi, T, Anchor::pressure_at(0, p0));
    const double u0 = bubble ? 0.0 : spec.constant("u0");
    each([&](int, int j, double, double, Prim<2>& b) {
      b = {col.rho[static_cast<std::size_t>(j)], {u0, 0.0}, col.p[static_cast<std::size_t>(j)]};
    });
    s.p_ref = p0;
    v = bg;
    each([&](int i, int j, double x, double y, Prim<2>&) {
      double dth;
      if (bubble) {
        const double r = std::hypot(x - spec.constant("xc"), y - spec.constant("yc"));
        const double rc = spec.constant("rc");
        dth = r < rc ? 0.5 * spec.constant("thetac") * (1.0 + std::cos(std::numbers::pi * r / rc)) : 0.0;
      } else {
        const double xr = (x - spec.constant("xc")) / spec.constant("ac");
        dth = spec.constant("thetac") * std::sin(std::numbers::pi * y / spec.constant("hc")) / (1.0 + xr * xr);
      }
      const double tb = theta_bar(y);
      v[g.index(i, j)].rho *= tb / (tb + dth);
    });
  } else {
    throw ConfigError("case '" + n + "' has no 2D builder");
  }

  s.background = bg;
  if (v.empty()) {
    v = bg;
    if ((n == "iso2d_pert" || n == "poly2d_pert") && spec.constant("eta") != 0.0) {
      const double scale = n == "iso2d_pert" ? spec.constant("rho0") / spec.constant("p0") : 1.0;
      each([&](int i, int j, double x, double y, Prim<2>&) {
        const double dx = x - spec.constant("xc"), dy = y - spec.constant("yc");
        v[g.index(i, j)].p += spec.constant("eta") * std::exp(-100.0 * scale * (dx * dx + dy * dy));
      });
    }
  }
  // Duplicate periodic nodes carry the value of their partner.
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const int si = (g.left == Boundary::Periodic && i == g.nx - 1) ? 0 : i;
      const int sj = (g.bottom == Boundary::Periodic && j == g.ny - 1) ? 0 : j;
      v[g.index(i, j)] = v[g.index(si, sj)];
    }
  s.q0 = to_conserved(v, s.eos);
  return s;
}

/// Norm weights of the nodes: geometric weight, zero on periodic duplicates.
inline std::vector<double> norm_weights(const Grid2D& g) {
  std::vector<double> w(g.size());
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) w[g.index(i, j)] = g.unique(i, j) ? g.weight(i, j) : 0.0;
  return w;
}

inline std::vector<double> norm_weights(const Grid1D& g) { return std::vector<double>(static_cast<std::size_t>(g.n), 1.0); }

/// Total mass sum(w rho) dx (dy).
inline double total_mass(const Solver1D::State& q, const Grid1D& g) {
  double m = 0.0;
  for (const auto& c : q) m += c.rho;
  return m * g.dx;
}

inline double total_mass(const Solver2D::State& q, const Grid2D& g) {
  double m = 0.0;
  const auto w = norm_weights(g);
  for (std::size_t k = 0; k < q.size(); ++k) m += w[k] * q[k].rho;
  return m * g.dx * g.dy;
}

/// Potential-temperature perturbation of each node relative to the background.
inline std::vector<double> potential_temperature_perturbation(const Setup2D& s, const std::vector<Prim<2>>& v) {
  std::vector<double> d(v.size());
  for (std::size_t k = 0; k < v.size(); ++k)
    d[k] = potential_temperature(s.eos, v[k].rho, v[k].p, s.p_ref) -
           potential_temperature(s.eos, s.background[k].rho, s.background[k].p, s.p_ref);
  return d;
}

/// Centroid of the positive part of a nodal field.
inline std::array<double, 2> positive_centroid(const Grid2D& g, const std::vector<double>& f) {
  double sw = 0.0, sx = 0.0, sy = 0.0;
  const auto w = norm_weights(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      const double m = w[k] * std::max(f[k], 0.0);
      sw += m;
      sx += m * g.x(i);
      sy += m * g.y(j);
    }
  if (!(sw > 0.0)) return {std::nan(""), std::nan("")};
  return {sx / sw, sy / sw};
}

}  // namespace wbfv
