#pragma once
// Equations of state written in the form p = rho * theta.
//
// Three closures are provided: ideal gas (theta = R T), a polytropic van der Waals
// gas (theta = theta(rho, T)) and an ideal gas with radiation pressure
// (theta = theta(p, T)). All routines are pure functions of their arguments.

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>
#include <variant>

#include "wbfv/error.hpp"

namespace wbfv {

struct IdealGas {
  double R = 1.0;
  double gamma = 1.4;
};

struct VanDerWaals {
  double a = 0.0;   // attraction constant
  double b = 0.0;   // covolume per mole
  double M = 1.0;   // molar mass
  double Ru = 1.0;  // universal gas constant
  double gamma = 1.4;
};

struct IdealRadiation {
  double R = 1.0;
  double gamma = 1.4;
  double a_rad = 0.0;  // radiation constant
};

/// Thermodynamic input pairs accepted by theta().
struct PressureTemperature {
  double p;
  double T;
};
struct DensityTemperature {
  double rho;
  double T;
};

namespace detail {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] inline void thermo_fail(const std::string& what) { throw InvalidThermoState(what); }

inline void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) thermo_fail(std::string(name) + " must be positive and finite");
}
}  // namespace detail

class Eos {
 public:
  using Params = std::variant<IdealGas, VanDerWaals, IdealRadiation>;

  Eos() : Eos(IdealGas{}) {}
  Eos(IdealGas g) : params_(g) { validate(); }          // NOLINT(google-explicit-constructor)
  Eos(VanDerWaals g) : params_(g) { validate(); }       // NOLINT(google-explicit-constructor)
  Eos(IdealRadiation g) : params_(g) { validate(); }    // NOLINT(google-explicit-constructor)

  [[nodiscard]] const Params& params() const noexcept { return params_; }

  [[nodiscard]] double gamma() const noexcept {
    return std::visit([](const auto& e) { return e.gamma; }, params_);
  }

  /// True when theta is naturally a function of (rho, T); the discrete
  /// hydrostatic solver then iterates on density instead of pressure.
  [[nodiscard]] bool density_based() const noexcept {
    return std::holds_alternative<VanDerWaals>(params_);
  }

  [[nodiscard]] std::string name() const {
    return std::visit(detail::overloaded{[](const IdealGas&) { return std::string("ideal"); },
                                         [](const VanDerWaals&) { return std::string("vdw"); },
                                         [](const IdealRadiation&) { return std::string("radiation"); }},
                      params_);
  }

  template <class F>
  decltype(auto) visit(F&& f) const {
    return std::visit(std::forward<F>(f), params_);
  }

 private:
  void validate() const {
    std::visit(detail::overloaded{
                   [](const IdealGas& e) {
                     if (!(e.gamma > 1.0)) detail::thermo_fail("gamma must exceed 1");
                     if (!(e.R > 0.0)) detail::thermo_fail("R must be positive");
                   },
                   [](const VanDerWaals& e) {
                     if (!(e.gamma > 1.0)) detail::thermo_fail("gamma must exceed 1");
                     if (!(e.Ru > 0.0)) detail::thermo_fail("Ru must be positive");
                     if (!(e.M > 0.0)) detail::thermo_fail("M must be positive");
                     if (e.a < 0.0 || e.b < 0.0) detail::thermo_fail("van der Waals a, b must be non-negative");
                   },
                   [](const IdealRadiation& e) {
                     if (!(e.gamma > 1.0)) detail::thermo_fail("gamma must exceed 1");
                     if (!(e.R > 0.0)) detail::thermo_fail("R must be positive");
                     if (e.a_rad < 0.0) detail::thermo_fail("radiation constant must be non-negative");
                   }},
               params_);
  }

  Params params_;
};

namespace detail {

inline void check_covolume(const VanDerWaals& e, double rho) {
  if (!(e.M - rho * e.b > 0.0)) thermo_fail("van der Waals covolume exceeded: rho must be below M/b");
}

inline double radiation_pressure(const IdealRadiation& e, double T) { return e.a_rad * T * T * T * T / 3.0; }

/// Safeguarded Newton for an increasing convex function on [lo, hi].
/// Starts from hi, where Newton iterates decrease monotonically.
template <class F, class DF>
double bracketed_newton(F f, DF df, double lo, double hi, const char* what) {
  double x = hi;
  for (int it = 0; it < 100; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (fx > 0.0) hi = x; else lo = x;
    double next = x - fx / df(x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-13 * std::abs(next)) return next;
    x = next;
  }
  throw InversionFailure(std::string(what) + ": no convergence after 100 iterations");
}

}  // namespace detail

/// theta = p / rho from a (p, T) pair. Valid for ideal and radiation closures.
inline double theta(const Eos& eos, PressureTemperature s) {
  detail::require_positive(s.p, "pressure");
  detail::require_positive(s.T, "temperature");
  return eos.visit(detail::overloaded{
      [&](const IdealGas& e) { return e.R * s.T; },
      [&](const VanDerWaals&) -> double {
        detail::thermo_fail("van der Waals theta needs (rho, T), not (p, T)");
      },
      [&](const IdealRadiation& e) {
        const double prad = detail::radiation_pressure(e, s.T);
        if (!(s.p > prad)) detail::thermo_fail("radiation pressure must stay below total pressure");
        return s.p * e.R * s.T / (s.p - prad);
      }});
}

/// theta = p / rho from a (rho, T) pair. Valid for ideal and van der Waals closures.
inline double theta(const Eos& eos, DensityTemperature s) {
  detail::require_positive(s.rho, "density");
  detail::require_positive(s.T, "temperature");
  return eos.visit(detail::overloaded{
      [&](const IdealGas& e) { return e.R * s.T; },
      [&](const VanDerWaals& e) {
        detail::check_covolume(e, s.rho);
        return e.Ru * s.T / (e.M - s.rho * e.b) - e.a * s.rho / (e.M * e.M);
      },
      [&](const IdealRadiation&) -> double {
        detail::thermo_fail("radiation theta needs (p, T), not (rho, T)");
      }});
}

inline double pressure(const Eos& eos, double rho, double T) {
  detail::require_positive(rho, "density");
  detail::require_positive(T, "temperature");
  return eos.visit(detail::overloaded{
      [&](const IdealGas& e) { return rho * e.R * T; },
      [&](const VanDerWaals& e) {
        detail::check_covolume(e, rho);
        const double n = rho / e.M;
        return rho * e.Ru * T / (e.M - rho * e.b) - e.a * n * n;
      },
      [&](const IdealRadiation& e) { return rho * e.R * T + detail::radiation_pressure(e, T); }});
}

inline double temperature(const Eos& eos, double rho, double p) {
  detail::require_positive(rho, "density");
  detail::require_positive(p, "pressure");
  return eos.visit(detail::overloaded{
      [&](const IdealGas& e) { return p / (rho * e.R); },
      [&](const VanDerWaals& e) {
        detail::check_covolume(e, rho);
        const double n = rho / e.M;
        const double attraction = p + e.a * n * n;
        if (!(attraction > 0.0)) detail::thermo_fail("van der Waals state has p + a (rho/M)^2 <= 0");
        return attraction * (e.M - rho * e.b) / (rho * e.Ru);
      },
      [&](const IdealRadiation& e) {
        const double T_gas = p / (rho * e.R);
        if (e.a_rad == 0.0) return T_gas;
        const double hi = std::min(T_gas, std::pow(3.0 * p / e.a_rad, 0.25));
        return detail::bracketed_newton(
            [&](double T) { return rho * e.R * T + detail::radiation_pressure(e, T) - p; },
            [&](double T) { return rho * e.R + 4.0 * e.a_rad * T * T * T / 3.0; }, 0.0, hi,
            "radiation temperature inversion");
      }});
}

/// Density from (p, T). Used to close equilibria anchored on pressure.
inline double density(const Eos& eos, double p, double T) {
  detail::require_positive(p, "pressure");
  detail::require_positive(T, "temperature");
  return eos.visit(detail::overloaded{
      [&](const IdealGas& e) { return p / (e.R * T); },
      [&](const VanDerWaals& e) {
        // p(rho) at fixed T is not monotone for subcritical T; iterate from the
        // ideal-gas estimate and stay in the single-phase branch.
        double rho = std::min(p * e.M / (e.Ru * T), 0.5 * e.M / std::max(e.b, 1e-300));
        for (int it = 0; it < 100; ++it) {
          const double n = rho / e.M;
          const double f = rho * e.Ru * T / (e.M - rho * e.b) - e.a * n * n - p;
          const double df = e.Ru * T * e.M / ((e.M - rho * e.b) * (e.M - rho * e.b)) - 2.0 * e.a * rho / (e.M * e.M);
          if (!(df > 0.0)) break;
          const double next = rho - f / df;
          if (!(next > 0.0) || !(e.M - next * e.b > 0.0)) break;
          if (std::abs(next - rho) <= 1e-14 * next) return next;
          rho = next;
        }
        throw InversionFailure("van der Waals density inversion failed");
      },
      [&](const IdealRadiation& e) {
        const double pg = p - detail::radiation_pressure(e, T);
        if (!(pg > 0.0)) detail::thermo_fail("radiation pressure must stay below total pressure");
        return pg / (e.R * T);
      }});
}

/// Internal energy per unit volume (kinetic part excluded).
inline double internal_energy(const Eos& eos, double rho, double T) {
  detail::require_positive(rho, "density");
  detail::require_positive(T, "temperature");
  return eos.visit(detail::overloaded{
      [&](const IdealGas& e) { return rho * e.R * T / (e.gamma - 1.0); },
      [&](const VanDerWaals& e) {
        detail::check_covolume(e, rho);
        const double n = rho / e.M;
        return rho * e.Ru * T / (e.M * (e.gamma - 1.0)) - e.a * n * n;
      },
      [&](const IdealRadiation& e) {
        return rho * e.R * T / (e.gamma - 1.0) + e.a_rad * T * T * T * T;
      }});
}

/// Inverse of internal_energy in T at fixed rho.
inline double temperature_from_energy(const Eos& eos, double rho, double rho_eps) {
  detail::require_positive(rho, "density");
  return eos.visit(detail::overloaded{
      [&](const IdealGas& e) {
        detail::require_positive(rho_eps, "internal energy");
        return rho_eps * (e.gamma - 1.0) / (rho * e.R);
      },
      [&](const VanDerWaals& e) {
        detail::check_covolume(e, rho);
        const double n = rho / e.M;
        const double T = (rho_eps + e.a * n * n) * e.M * (e.gamma - 1.0) / (rho * e.Ru);
        detail::require_positive(T, "van der Waals temperature");
        return T;
      },
      [&](const IdealRadiation& e) {
        detail::require_positive(rho_eps, "internal energy");
        const double T_gas = rho_eps * (e.gamma - 1.0) / (rho * e.R);
        if (e.a_rad == 0.0) return T_gas;
        const double hi = std::min(T_gas, std::pow(rho_eps / e.a_rad, 0.25));
        return detail::bracketed_newton(
            [&](double T) { return rho * e.R * T / (e.gamma - 1.0) + e.a_rad * T * T * T * T - rho_eps; },
            [&](double T) { return rho * e.R / (e.gamma - 1.0) + 4.0 * e.a_rad * T * T * T; }, 0.0, hi,
            "radiation energy inversion");
      }});
}

/// Wave-speed estimate used by the Riemann solver and the CFL condition.
///
/// van der Waals uses the closed form c^2 = (gamma p M + a rho^2)/(rho (M - rho b)) - 2 a rho / M.
/// The radiation closure uses sqrt(gamma p / rho) as an approximate bound; it is
/// not the thermodynamic sound speed of that gas.
inline double sound_speed(const Eos& eos, double rho, double p) {
  detail::require_positive(rho, "density");
  detail::require_positive(p, "pressure");
  return eos.visit(detail::overloaded{
      [&](const IdealGas& e) { return std::sqrt(e.gamma * p / rho); },
      [&](const VanDerWaals& e) {
        detail::check_covolume(e, rho);
        const double c2 =
            (e.gamma * p * e.M + e.a * rho * rho) / (rho * (e.M - rho * e.b)) - 2.0 * e.a * rho / e.M;
        if (!(c2 > 0.0)) throw HyperbolicityLoss("van der Waals sound speed radicand is not positive");
        return std::sqrt(c2);
      },
      [&](const IdealRadiation& e) { return std::sqrt(e.gamma * p / rho); }});
}

/// Thermodynamic sound speed (dp/drho at constant entropy), from
/// c^2 = p_rho|_eps + (p / rho^2) p_eps|_rho. Used by the linear-acoustics oracle.
inline double adiabatic_sound_speed(const Eos& eos, double rho, double p) {
  const double T = temperature(eos, rho, p);
  const double c2 = eos.visit(detail::overloaded{
      [&](const IdealGas& e) { return e.gamma * p / rho; },
      [&](const VanDerWaals& e) {
        const double d = e.M - rho * e.b;
        const double p_rho_T = e.Ru * T * e.M / (d * d) - 2.0 * e.a * rho / (e.M * e.M);
        const double p_T = rho * e.Ru / d;
        // eps = Ru T / (M (gamma - 1)) - a rho / M^2
        const double T_eps = e.M * (e.gamma - 1.0) / e.Ru;
        const double T_rho_eps = e.a / (e.M * e.M) * T_eps;
        return p_rho_T + p_T * T_rho_eps + p / (rho * rho) * p_T * T_eps;
      },
      [&](const IdealRadiation& e) {
        const double T3 = T * T * T;
        const double p_rho_T = e.R * T;
        const double p_T = rho * e.R + 4.0 * e.a_rad * T3 / 3.0;
        // eps = R T / (gamma - 1) + a T^4 / rho
        const double eps_T = e.R / (e.gamma - 1.0) + 4.0 * e.a_rad * T3 / rho;
        const double eps_rho = -e.a_rad * T3 * T / (rho * rho);
        return p_rho_T - p_T * eps_rho / eps_T + p / (rho * rho) * p_T / eps_T;
      }});
  if (!(c2 > 0.0)) throw HyperbolicityLoss("adiabatic sound speed radicand is not positive");
  return std::sqrt(c2);
}

}  // namespace wbfv
