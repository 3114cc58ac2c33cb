#pragma once
// Euler fluxes and the HLLC approximate Riemann solver.
//
// HLLC follows Toro's variant in which the star-region flux is
//   F*_K = [S* (S_K U_K - F_K) + S_K P_LR D*] / (S_K - S*),  D* = [0, n, S*],
// with P_LR the averaged star pressure. For a stationary contact S* = 0 exactly,
// so the mass and energy components vanish identically and the momentum
// component equals the common pressure.

#include <algorithm>

#include "wbfv/eos.hpp"
#include "wbfv/state.hpp"

namespace wbfv {

template <int D>
using FluxVector = Cons<D>;

/// Flux along `axis` given both primitive and conserved forms of the same state.
template <int D>
FluxVector<D> physical_flux(const Prim<D>& v, const Cons<D>& q, int axis) {
  const double un = v.vel[axis];
  FluxVector<D> f;
  f.rho = q.rho * un;
  for (int d = 0; d < D; ++d) f.mom[d] = q.mom[d] * un;
  f.mom[axis] += v.p;
  f.E = (q.E + v.p) * un;
  return f;
}

template <int D>
FluxVector<D> physical_flux(const Prim<D>& v, const Eos& eos, int axis) {
  return physical_flux(v, prim_to_cons(v, eos), axis);
}

/// Flux through a solid wall normal to `axis`: pressure only.
template <int D>
FluxVector<D> wall_flux(double p, int axis) {
  FluxVector<D> f;
  f.mom[axis] = p;
  return f;
}

/// Wall flux from a conserved wall-node state; pressure from the full EOS.
template <int D>
FluxVector<D> wall_flux(const Cons<D>& q, const Eos& eos, int axis) {
  return wall_flux<D>(cons_to_prim(q, eos).p, axis);
}

template <int D>
FluxVector<D> hllc(const Prim<D>& vl, const Prim<D>& vr, const Eos& eos, int axis) {
  const double cl = sound_speed(eos, vl.rho, vl.p);
  const double cr = sound_speed(eos, vr.rho, vr.p);
  const double ul = vl.vel[axis];
  const double ur = vr.vel[axis];
  const double sl = std::min(ul - cl, ur - cr);
  const double sr = std::max(ul + cl, ur + cr);

  const Cons<D> ql = prim_to_cons(vl, eos);
  const Cons<D> qr = prim_to_cons(vr, eos);
  if (sl >= 0.0) return physical_flux(vl, ql, axis);
  if (sr <= 0.0) return physical_flux(vr, qr, axis);

  const double ml = vl.rho * (sl - ul);  // mass flux relative to the left wave
  const double mr = vr.rho * (sr - ur);
  const double s_star = (vr.p - vl.p + ml * ul - mr * ur) / (ml - mr);
  const double p_lr = 0.5 * (vl.p + vr.p + ml * (s_star - ul) + mr * (s_star - ur));

  const bool left = s_star >= 0.0;
  const Prim<D>& v = left ? vl : vr;
  const Cons<D>& q = left ? ql : qr;
  const double s = left ? sl : sr;

  const FluxVector<D> f = physical_flux(v, q, axis);
  const double inv = 1.0 / (s - s_star);
  const double ratio = s / (s - s_star);  // exactly 1 when s_star == 0
  FluxVector<D> out;
  for (int k = 0; k < Cons<D>::size; ++k) out[k] = s_star * (s * q[k] - f[k]) * inv;
  out.mom[axis] += ratio * p_lr;
  out.E += ratio * p_lr * s_star;
  return out;
}

}  // namespace wbfv
