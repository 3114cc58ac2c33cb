#pragma once
// Per-cell fluid states and the conversions between them.

#include <array>
#include <cmath>
#include <optional>

#include "wbfv/eos.hpp"
#include "wbfv/error.hpp"

namespace wbfv {

/// Number of conserved components for a D-dimensional state.
template <int D>
inline constexpr int kComponents = D + 2;

namespace detail {
// Component access shared by the three state records: 0 = density-like,
// 1..D = velocity/momentum, D+1 = pressure/energy.
template <class Derived, int D>
struct Indexed {
  constexpr double& operator[](int k) {
    auto& s = static_cast<Derived&>(*this);
    if (k == 0) return s.first();
    if (k <= D) return s.vec()[k - 1];
    return s.last();
  }
  constexpr double operator[](int k) const { return const_cast<Indexed&>(*this)[k]; }
};
}  // namespace detail

template <int D>
struct Prim : detail::Indexed<Prim<D>, D> {
  static constexpr int size = D + 2;

  double rho = 1.0;
  std::array<double, D> vel{};
  double p = 1.0;

  constexpr Prim() = default;
  constexpr Prim(double rho_, std::array<double, D> vel_, double p_) : rho(rho_), vel(vel_), p(p_) {}

  constexpr double& first() { return rho; }
  constexpr std::array<double, D>& vec() { return vel; }
  constexpr double& last() { return p; }
};

template <int D>
struct Cons : detail::Indexed<Cons<D>, D> {
  static constexpr int size = D + 2;

  double rho = 0.0;
  std::array<double, D> mom{};
  double E = 0.0;

  constexpr Cons() = default;
  constexpr Cons(double rho_, std::array<double, D> mom_, double E_) : rho(rho_), mom(mom_), E(E_) {}

  constexpr double& first() { return rho; }
  constexpr std::array<double, D>& vec() { return mom; }
  constexpr double& last() { return E; }

  constexpr Cons& operator+=(const Cons& o) {
    for (int k = 0; k < kComponents<D>; ++k) (*this)[k] += o[k];
    return *this;
  }
  constexpr Cons& operator-=(const Cons& o) {
    for (int k = 0; k < kComponents<D>; ++k) (*this)[k] -= o[k];
    return *this;
  }
  constexpr Cons& operator*=(double s) {
    for (int k = 0; k < kComponents<D>; ++k) (*this)[k] *= s;
    return *this;
  }
  friend constexpr Cons operator+(Cons a, const Cons& b) { return a += b; }
  friend constexpr Cons operator-(Cons a, const Cons& b) { return a -= b; }
  friend constexpr Cons operator*(double s, Cons a) { return a *= s; }
};

/// Reconstruction variables [rho e^{-psi}, velocity, p e^{-psi}].
template <int D>
struct WState : detail::Indexed<WState<D>, D> {
  static constexpr int size = D + 2;

  double w_rho = 0.0;
  std::array<double, D> vel{};
  double w_p = 0.0;

  constexpr WState() = default;
  constexpr WState(double wr, std::array<double, D> v, double wp) : w_rho(wr), vel(v), w_p(wp) {}

  constexpr double& first() { return w_rho; }
  constexpr std::array<double, D>& vec() { return vel; }
  constexpr double& last() { return w_p; }
};

template <int D>
constexpr double kinetic_energy(double rho, const std::array<double, D>& vel) {
  double s = 0.0;
  for (double u : vel) s += u * u;
  return 0.5 * rho * s;
}

/// Internal energy per unit volume from (rho, p). Ideal gas uses p / (gamma - 1) directly.
inline double internal_energy_from_pressure(const Eos& eos, double rho, double p) {
  if (const auto* g = std::get_if<IdealGas>(&eos.params())) {
    detail::require_positive(rho, "density");
    detail::require_positive(p, "pressure");
    return p / (g->gamma - 1.0);
  }
  return internal_energy(eos, rho, temperature(eos, rho, p));
}

/// Pressure from (rho, rho * eps). Ideal gas uses (gamma - 1) rho eps directly.
inline double pressure_from_energy(const Eos& eos, double rho, double rho_eps) {
  if (const auto* g = std::get_if<IdealGas>(&eos.params())) {
    detail::require_positive(rho, "density");
    detail::require_positive(rho_eps, "internal energy");
    return (g->gamma - 1.0) * rho_eps;
  }
  return pressure(eos, rho, temperature_from_energy(eos, rho, rho_eps));
}

template <int D>
Cons<D> prim_to_cons(const Prim<D>& v, const Eos& eos) {
  Cons<D> q;
  q.rho = v.rho;
  for (int d = 0; d < D; ++d) q.mom[d] = v.rho * v.vel[d];
  q.E = internal_energy_from_pressure(eos, v.rho, v.p) + kinetic_energy<D>(v.rho, v.vel);
  return q;
}

template <int D>
Prim<D> cons_to_prim(const Cons<D>& q, const Eos& eos, std::optional<long> cell = std::nullopt) {
  if (!(q.rho > 0.0) || !std::isfinite(q.rho)) throw UnphysicalState("non-positive density", cell);
  Prim<D> v;
  v.rho = q.rho;
  for (int d = 0; d < D; ++d) v.vel[d] = q.mom[d] / q.rho;
  const double rho_eps = q.E - kinetic_energy<D>(q.rho, v.vel);
  try {
    v.p = pressure_from_energy(eos, q.rho, rho_eps);
  } catch (const InvalidThermoState& e) {
    throw UnphysicalState(std::string("unphysical internal energy: ") + e.what(), cell);
  }
  if (!(v.p > 0.0) || !std::isfinite(v.p)) throw UnphysicalState("non-positive pressure", cell);
  return v;
}

/// Scale density and pressure by e^{-psi}. `scale` is e^{-psi} when the caller
/// already has it.
template <int D>
constexpr WState<D> to_w_scaled(const Prim<D>& v, double scale) {
  return WState<D>{v.rho * scale, v.vel, v.p * scale};
}

template <int D>
constexpr Prim<D> from_w_scaled(const WState<D>& w, double scale) {
  return Prim<D>{w.w_rho / scale, w.vel, w.w_p / scale};
}

template <int D>
WState<D> to_w(const Prim<D>& v, double psi) {
  return to_w_scaled(v, std::exp(-psi));
}

template <int D>
Prim<D> from_w(const WState<D>& w, double psi) {
  return from_w_scaled(w, std::exp(-psi));
}

}  // namespace wbfv
