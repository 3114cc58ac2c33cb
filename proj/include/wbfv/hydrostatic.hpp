#pragma once
// Hydrostatic equilibria.
//
// discrete_hydrostatic marches the scheme's own quadrature of dp/dx = -rho dphi/dx,
//   p_i = p_{i-1} exp(-(phi_i - phi_{i-1}) (1/theta_{i-1} + 1/theta_i) / 2),
// solving one scalar root problem per point. Data built this way is preserved by
// the well-balanced scheme to round-off. ode_reference integrates the continuous
// equation with RK4 and stands in for the exact solution; linearized_euler_1d is
// the small-perturbation oracle.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wbfv/eos.hpp"
#include "wbfv/error.hpp"
#include "wbfv/gravity.hpp"

namespace wbfv {

enum class Provenance { DiscreteNewton, OdeReference, ClosedForm };

inline std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::DiscreteNewton: return "discrete_newton";
    case Provenance::OdeReference: return "ode_reference";
    case Provenance::ClosedForm: return "closed_form";
  }
  return "unknown";
}

struct HydrostaticProfile {
  std::vector<double> x, rho, p, T;
  Provenance provenance = Provenance::DiscreteNewton;

  [[nodiscard]] std::size_t size() const { return x.size(); }
};

/// Equilibrium temperature as a function of position.
///
/// Isothermal and polytropic profiles remember their parameters so that the
/// reference solver can return closed forms for an ideal gas.
struct TemperatureProfile {
  enum class Kind { Isothermal, Polytropic, General } kind = Kind::General;
  std::function<double(double)> T;
  std::function<double(double)> dT;  // may be empty when T is constant
  // Polytropic data: R T = R T_a - (nu - 1)/nu (phi - phi_a).
  double T_a = 1.0, nu = 1.0, R = 1.0;
  std::function<double(double)> phi;

  static TemperatureProfile isothermal(double T0) {
    TemperatureProfile t;
    t.kind = Kind::Isothermal;
    t.T_a = T0;
    t.T = [T0](double) { return T0; };
    t.dT = [](double) { return 0.0; };
    return t;
  }

  /// Temperature of a polytrope p ~ rho^nu in an ideal gas with gas constant R,
  /// equal to T_a where phi(x) = phi_a.
  static TemperatureProfile polytropic(const Potential& pot, double R, double T_a, double nu, double phi_a = 0.0) {
    TemperatureProfile t;
    t.kind = Kind::Polytropic;
    t.T_a = T_a;
    t.nu = nu;
    t.R = R;
    const double k = (nu - 1.0) / (nu * R);
    t.phi = [pot](double x) { return pot(x); };
    t.T = [pot, T_a, k, phi_a](double x) { return T_a - k * (pot(x) - phi_a); };
    t.dT = [pot, k](double x) { return -k * pot.gradient(x)[0]; };
    return t;
  }

  static TemperatureProfile general(std::function<double(double)> T, std::function<double(double)> dT) {
    TemperatureProfile t;
    t.T = std::move(T);
    t.dT = std::move(dT);
    return t;
  }

  [[nodiscard]] double slope(double x) const { return dT ? dT(x) : 0.0; }
};

/// Where an equilibrium is pinned: grid index (discrete) or coordinate (ODE).
struct Anchor {
  enum class Kind { Pressure, Density } kind = Kind::Pressure;
  long index = 0;
  double x = 0.0;
  double value = 1.0;

  static Anchor pressure_at(long index, double value) { return {Kind::Pressure, index, 0.0, value}; }
  static Anchor density_at(long index, double value) { return {Kind::Density, index, 0.0, value}; }
  static Anchor pressure_at_x(double x, double value) { return {Kind::Pressure, 0, x, value}; }
  static Anchor density_at_x(double x, double value) { return {Kind::Density, 0, x, value}; }
};

namespace detail {

// theta and its derivative with respect to the unknown of the root problem:
// pressure for (p, T) closures, density for van der Waals.
struct ThetaSlope {
  double theta;
  double slope;
};

inline ThetaSlope theta_with_slope(const Eos& eos, double unknown, double T) {
  return eos.visit(overloaded{
      [&](const IdealGas& e) { return ThetaSlope{e.R * T, 0.0}; },
      [&](const VanDerWaals& e) {
        const double d = e.M - unknown * e.b;
        if (!(d > 0.0)) thermo_fail("van der Waals covolume exceeded");
        return ThetaSlope{e.Ru * T / d - e.a * unknown / (e.M * e.M), e.Ru * T * e.b / (d * d) - e.a / (e.M * e.M)};
      },
      [&](const IdealRadiation& e) {
        const double k = radiation_pressure(e, T);
        const double d = unknown - k;
        if (!(d > 0.0)) thermo_fail("radiation pressure must stay below total pressure");
        return ThetaSlope{unknown * e.R * T / d, -k * e.R * T / (d * d)};
      }});
}

// One step of the recurrence: find the unknown at point i given point `prev`.
inline double solve_step(const Eos& eos, double p_prev, double theta_prev, double dphi, double T, double guess,
                         long index) {
  const double c = 0.5 * dphi;
  const bool rho_based = eos.density_based();
  auto f = [&](double x, double* df) {
    const ThetaSlope ts = theta_with_slope(eos, x, T);
    if (!(ts.theta > 0.0)) thermo_fail("non-positive theta");
    const double target = p_prev * std::exp(-c * (1.0 / theta_prev + 1.0 / ts.theta));
    const double dtarget = target * c * ts.slope / (ts.theta * ts.theta);
    if (rho_based) {
      if (df) *df = ts.theta + x * ts.slope - dtarget;
      return x * ts.theta - target;
    }
    if (df) *df = 1.0 - dtarget;
    return x - target;
  };

  double x = guess;
  try {
    for (int it = 0; it < 50; ++it) {
      double df = 0.0;
      const double fx = f(x, &df);
      if (!(df != 0.0) || !std::isfinite(df)) break;
      const double next = x - fx / df;
      if (!(next > 0.0) || !std::isfinite(next)) break;
      if (std::abs(next - x) <= 1e-13 * std::abs(next)) return next;
      x = next;
    }
  } catch (const InvalidThermoState&) {
    // fall through to bisection
  }

  // Bisection fallback on [guess / 2, 2 guess].
  double lo = 0.5 * guess, hi = 2.0 * guess;
  double flo, fhi;
  try {
    flo = f(lo, nullptr);
    fhi = f(hi, nullptr);
  } catch (const InvalidThermoState& e) {
    throw EquilibriumError(std::string("iterate left the EOS domain: ") + e.what(), index);
  }
  if (!(flo * fhi <= 0.0)) throw EquilibriumError("Newton failed and the root is not bracketed", index);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid, nullptr);
    if ((fm <= 0.0) == (flo <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-13 * hi) return 0.5 * (lo + hi);
  }
  throw EquilibriumError("bisection did not converge", index);
}

}  // namespace detail

/// Relative residual of the discrete recurrence between points i-1 and i.
inline double hydrostatic_residual(const HydrostaticProfile& h, const std::vector<double>& phi, std::size_t i) {
  const double th_prev = h.p[i - 1] / h.rho[i - 1];
  const double th = h.p[i] / h.rho[i];
  const double target = h.p[i - 1] * std::exp(-0.5 * (phi[i] - phi[i - 1]) * (1.0 / th_prev + 1.0 / th));
  return std::abs(h.p[i] - target) / h.p[i];
}

/// Discrete hydrostatic solution on the points `x` with nodal potential `phi`
/// and temperatures `T`, pinned at anchor.index.
inline HydrostaticProfile discrete_hydrostatic(const Eos& eos, const std::vector<double>& x,
                                               const std::vector<double>& phi, const std::vector<double>& T,
                                               const Anchor& anchor) {
  const std::size_t n = x.size();
  if (n == 0 || phi.size() != n || T.size() != n) throw ConfigError("discrete_hydrostatic: size mismatch");
  if (anchor.index < 0 || static_cast<std::size_t>(anchor.index) >= n)
    throw ConfigError("discrete_hydrostatic: anchor index out of range");
  if (!(anchor.value > 0.0)) throw ConfigError("discrete_hydrostatic: anchor value must be positive");
  for (std::size_t i = 0; i < n; ++i)
    if (!(T[i] > 0.0)) throw EquilibriumError("temperature must be positive", static_cast<long>(i));

  HydrostaticProfile h;
  h.x = x;
  h.T = T;
  h.rho.assign(n, 0.0);
  h.p.assign(n, 0.0);
  h.provenance = Provenance::DiscreteNewton;

  const auto a = static_cast<std::size_t>(anchor.index);
  try {
    if (anchor.kind == Anchor::Kind::Pressure) {
      h.p[a] = anchor.value;
      h.rho[a] = density(eos, anchor.value, T[a]);
    } else {
      h.rho[a] = anchor.value;
      h.p[a] = pressure(eos, anchor.value, T[a]);
    }
  } catch (const Error& e) {
    throw EquilibriumError(std::string("anchor state invalid: ") + e.what(), anchor.index);
  }

  const bool rho_based = eos.density_based();
  auto step = [&](std::size_t prev, std::size_t i) {
    const double th_prev = h.p[prev] / h.rho[prev];
    const double guess = rho_based ? h.rho[prev] : h.p[prev];
    const double u =
        detail::solve_step(eos, h.p[prev], th_prev, phi[i] - phi[prev], T[i], guess, static_cast<long>(i));
    const double th = detail::theta_with_slope(eos, u, T[i]).theta;
    if (rho_based) {
      h.rho[i] = u;
      h.p[i] = u * th;
    } else {
      h.p[i] = u;
      h.rho[i] = u / th;
    }
    const double th_new = h.p[i] / h.rho[i];
    const double target = h.p[prev] * std::exp(-0.5 * (phi[i] - phi[prev]) * (1.0 / th_prev + 1.0 / th_new));
    if (!(std::abs(h.p[i] - target) <= 1e-12 * h.p[i]))
      throw EquilibriumError("recurrence residual above 1e-12", static_cast<long>(i));
  };
  for (std::size_t i = a + 1; i < n; ++i) step(i - 1, i);
  for (std::size_t i = a; i-- > 0;) step(i + 1, i);
  return h;
}

/// Closed-form ideal-gas equilibria (isothermal or polytropic) at the points x.
/// Returns nothing when the profile is general or the gas is not ideal.
inline std::optional<HydrostaticProfile> closed_form_hydrostatic(const Eos& eos, const Potential& pot,
                                                                 const TemperatureProfile& tp,
                                                                 const Anchor& anchor,
                                                                 const std::vector<double>& x) {
  const auto* g = std::get_if<IdealGas>(&eos.params());
  if (!g || tp.kind == TemperatureProfile::Kind::General) return std::nullopt;
  const double R = g->R;
  const double Ta = tp.T(anchor.x);
  const double phi_a = pot(anchor.x);
  const double rho_a = anchor.kind == Anchor::Kind::Density ? anchor.value : anchor.value / (R * Ta);
  HydrostaticProfile h;
  h.provenance = Provenance::ClosedForm;
  h.x = x;
  for (double xi : x) {
    const double T = tp.T(xi);
    double rho;
    if (tp.kind == TemperatureProfile::Kind::Isothermal) {
      rho = rho_a * std::exp(-(pot(xi) - phi_a) / (R * Ta));
    } else {
      if (!(T > 0.0)) throw EquilibriumError("polytropic temperature not positive", 0);
      rho = rho_a * std::pow(T / Ta, 1.0 / (tp.nu - 1.0));
    }
    h.rho.push_back(rho);
    h.p.push_back(rho * R * T);
    h.T.push_back(T);
  }
  return h;
}

/// RK4 solution of the continuous hydrostatic equation sampled at x (sorted),
/// with `refinement` sub-steps between consecutive points. Ideal-gas isothermal
/// and polytropic profiles return their closed forms.
///
/// (p, T) closures integrate dp/dx = -p phi'/theta(p, T). van der Waals
/// integrates rho' = -(rho phi' + p_T T') / p_rho.
inline HydrostaticProfile ode_reference(const Eos& eos, const Potential& pot, const TemperatureProfile& tp,
                                        const Anchor& anchor, const std::vector<double>& x,
                                        int refinement = 10) {
  if (refinement < 8) throw ConfigError("ode_reference: refinement must be at least 8");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) throw ConfigError("ode_reference: sample points must increase");
  if (auto cf = closed_form_hydrostatic(eos, pot, tp, anchor, x)) return *cf;

  const bool rho_based = eos.density_based();
  // y is density for van der Waals, pressure otherwise.
  auto rhs = [&](double xi, double y) {
    const double T = tp.T(xi);
    const double dphi = pot.gradient(xi)[0];
    if (!rho_based) return -y * dphi / theta(eos, PressureTemperature{y, T});
    const auto& e = std::get<VanDerWaals>(eos.params());
    const double d = e.M - y * e.b;
    if (!(d > 0.0)) throw EquilibriumError("ODE iterate exceeded the covolume bound", 0);
    const double p_rho = e.Ru * T * e.M / (d * d) - 2.0 * e.a * y / (e.M * e.M);
    const double p_T = y * e.Ru / d;
    return -(y * dphi + p_T * tp.slope(xi)) / p_rho;
  };
  auto rk4 = [&](double x0, double x1, double y, int steps) {
    const double h = (x1 - x0) / steps;
    for (int s = 0; s < steps; ++s) {
      const double xs = x0 + s * h;
      const double k1 = rhs(xs, y);
      const double k2 = rhs(xs + 0.5 * h, y + 0.5 * h * k1);
      const double k3 = rhs(xs + 0.5 * h, y + 0.5 * h * k2);
      const double k4 = rhs(xs + h, y + h * k3);
      y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (!(y > 0.0) || !std::isfinite(y)) throw EquilibriumError("ODE iterate left the EOS domain", s);
    }
    return y;
  };

  const double Ta = tp.T(anchor.x);
  double y_a;
  if (rho_based)
    y_a = anchor.kind == Anchor::Kind::Density ? anchor.value : density(eos, anchor.value, Ta);
  else
    y_a = anchor.kind == Anchor::Kind::Pressure ? anchor.value : pressure(eos, anchor.value, Ta);

  const std::size_t n = x.size();
  std::vector<double> y(n);
  const auto split = static_cast<std::size_t>(std::lower_bound(x.begin(), x.end(), anchor.x) - x.begin());
  double xc = anchor.x, yc = y_a;
  for (std::size_t i = split; i < n; ++i) {
    if (x[i] > xc) yc = rk4(xc, x[i], yc, refinement);
    xc = x[i];
    y[i] = yc;
  }
  xc = anchor.x;
  yc = y_a;
  for (std::size_t i = split; i-- > 0;) {
    yc = rk4(xc, x[i], yc, refinement);
    xc = x[i];
    y[i] = yc;
  }

  HydrostaticProfile h;
  h.provenance = Provenance::OdeReference;
  h.x = x;
  for (std::size_t i = 0; i < n; ++i) {
    const double T = tp.T(x[i]);
    h.T.push_back(T);
    if (rho_based) {
      h.rho.push_back(y[i]);
      h.p.push_back(pressure(eos, y[i], T));
    } else {
      h.p.push_back(y[i]);
      h.rho.push_back(density(eos, y[i], T));
    }
  }
  return h;
}

/// Perturbation fields of the linearised Euler equations.
struct Perturbation {
  std::vector<double> x, drho, du, dp;
};

struct LinearizedOptions {
  double cfl = 0.5;        // used when dt == 0
  double dt = 0.0;         // fixed step if positive
  bool periodic = false;   // otherwise zero-gradient extrapolation
};

/// Linearised Euler equations about the equilibrium `base` (uniformly spaced
/// points), integrated with second-order central differences and classical RK4:
///   drho_t = -(rho dU)_x
///   dU_t   = -(dp_x + drho phi') / rho
///   dp_t   = -dU p'  - rho c^2 dU_x,   p' = -rho phi'
/// with c the adiabatic sound speed of the base state.
inline Perturbation linearized_euler_1d(const HydrostaticProfile& base, const Eos& eos, const Potential& pot,
                                        const std::function<double(double)>& dp0, double t_final,
                                        const LinearizedOptions& opt = {}) {
  const std::size_t n = base.size();
  if (n < 3) throw ConfigError("linearized_euler_1d: need at least 3 points");
  const double dx = base.x[1] - base.x[0];
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(base.x[i] - base.x[i - 1] - dx) > 1e-9 * dx)
      throw ConfigError("linearized_euler_1d: base grid must be uniform");

  std::vector<double> rho(base.rho), dphi(n), dpbar(n), rc2(n);
  double cmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    dphi[i] = pot.gradient(base.x[i])[0];
    dpbar[i] = -rho[i] * dphi[i];
    const double c = adiabatic_sound_speed(eos, rho[i], base.p[i]);
    rc2[i] = rho[i] * c * c;
    cmax = std::max(cmax, c);
  }
  const double dt_limit = dx / cmax;
  double dt = opt.dt > 0.0 ? opt.dt : opt.cfl * dt_limit;
  if (!(dt > 0.0) || dt > dt_limit) throw TimeStepError("linearized_euler_1d: time step violates CFL <= 1");

  Perturbation s;
  s.x = base.x;
  s.drho.assign(n, 0.0);
  s.du.assign(n, 0.0);
  s.dp.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.dp[i] = dp0(base.x[i]);

  auto at = [&](const std::vector<double>& f, long i) {
    const long m = static_cast<long>(n);
    if (opt.periodic) return f[static_cast<std::size_t>(((i % m) + m) % m)];
    return f[static_cast<std::size_t>(std::clamp(i, 0L, m - 1))];
  };
  auto at_mass = [&](const std::vector<double>& du, long i) {
    const long m = static_cast<long>(n);
    const long k = opt.periodic ? ((i % m) + m) % m : std::clamp(i, 0L, m - 1);
    return rho[static_cast<std::size_t>(k)] * du[static_cast<std::size_t>(k)];
  };
  struct State {
    std::vector<double> r, u, p;
  };
  auto L = [&](const State& q, State& out) {
    out.r.resize(n);
    out.u.resize(n);
    out.p.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const long i = static_cast<long>(k);
      const double inv2dx = 0.5 / dx;
      out.r[k] = -(at_mass(q.u, i + 1) - at_mass(q.u, i - 1)) * inv2dx;
      out.u[k] = -((at(q.p, i + 1) - at(q.p, i - 1)) * inv2dx + q.r[k] * dphi[k]) / rho[k];
      out.p[k] = -q.u[k] * dpbar[k] - rc2[k] * (at(q.u, i + 1) - at(q.u, i - 1)) * inv2dx;
    }
  };
  auto axpy = [&](const State& a, double h, const State& k, State& out) {
    out.r.resize(n);
    out.u.resize(n);
    out.p.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      out.r[i] = a.r[i] + h * k.r[i];
      out.u[i] = a.u[i] + h * k.u[i];
      out.p[i] = a.p[i] + h * k.p[i];
    }
  };

  State q{s.drho, s.du, s.dp}, k1, k2, k3, k4, tmp;
  double t = 0.0;
  while (t < t_final) {
    double h = dt;
    const bool last = t + h >= t_final;
    if (last) h = t_final - t;
    L(q, k1);
    axpy(q, 0.5 * h, k1, tmp);
    L(tmp, k2);
    axpy(q, 0.5 * h, k2, tmp);
    L(tmp, k3);
    axpy(q, h, k3, tmp);
    L(tmp, k4);
    for (std::size_t i = 0; i < n; ++i) {
      q.r[i] += h / 6.0 * (k1.r[i] + 2.0 * k2.r[i] + 2.0 * k3.r[i] + k4.r[i]);
      q.u[i] += h / 6.0 * (k1.u[i] + 2.0 * k2.u[i] + 2.0 * k3.u[i] + k4.u[i]);
      q.p[i] += h / 6.0 * (k1.p[i] + 2.0 * k2.p[i] + 2.0 * k3.p[i] + k4.p[i]);
    }
    t = last ? t_final : t + h;
  }
  s.drho = std::move(q.r);
  s.du = std::move(q.u);
  s.dp = std::move(q.p);
  return s;
}

/// Local cubic (four-point Lagrange) interpolation of tabulated data at xq.
inline double cubic_interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double xq) {
  const std::size_t n = xs.size();
  if (n < 4 || ys.size() != n) throw ConfigError("cubic_interpolate: need at least 4 matching samples");
  auto it = std::upper_bound(xs.begin(), xs.end(), xq);
  long k = static_cast<long>(it - xs.begin()) - 2;
  k = std::clamp(k, 0L, static_cast<long>(n) - 4);
  double sum = 0.0;
  for (long a = k; a < k + 4; ++a) {
    double w = 1.0;
    for (long b = k; b < k + 4; ++b)
      if (b != a) w *= (xq - xs[static_cast<std::size_t>(b)]) / (xs[static_cast<std::size_t>(a)] - xs[static_cast<std::size_t>(b)]);
    sum += w * ys[static_cast<std::size_t>(a)];
  }
  return sum;
}

}  // namespace wbfv
