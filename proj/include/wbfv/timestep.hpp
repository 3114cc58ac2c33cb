#pragma once
// Three-stage SSP Runge-Kutta with a step frozen from the state at t^n.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "wbfv/error.hpp"
#include "wbfv/state.hpp"

namespace wbfv {

/// Scratch storage reused across steps.
template <int D>
struct RkWork {
  std::vector<Cons<D>> L, u1, u2;
};

/// One SSP-RK3 step
///   u1 = u + dt L(u)
///   u2 = 3/4 u + 1/4 (u1 + dt L(u1))
///   u  = 1/3 u + 2/3 (u2 + dt L(u2))
/// written in increment form so that a zero right-hand side leaves u bit-for-bit unchanged.
/// `System` provides rhs(q, t, out) and constrain(q, t); the latter runs after every stage.
template <int D, class System>
void ssp_rk3_step(System& sys, std::vector<Cons<D>>& q, double t, double dt, RkWork<D>& w) {
  const std::size_t n = q.size();
  w.L.resize(n);
  w.u1.resize(n);
  w.u2.resize(n);
  constexpr int m = Cons<D>::size;

  sys.rhs(q, t, w.L);
  for (std::size_t i = 0; i < n; ++i)
    for (int c = 0; c < m; ++c) w.u1[i][c] = q[i][c] + dt * w.L[i][c];
  sys.constrain(w.u1, t + dt);

  sys.rhs(w.u1, t + dt, w.L);
  for (std::size_t i = 0; i < n; ++i)
    for (int c = 0; c < m; ++c) w.u2[i][c] = q[i][c] + 0.25 * ((w.u1[i][c] - q[i][c]) + dt * w.L[i][c]);
  sys.constrain(w.u2, t + 0.5 * dt);

  sys.rhs(w.u2, t + 0.5 * dt, w.L);
  for (std::size_t i = 0; i < n; ++i)
    for (int c = 0; c < m; ++c) q[i][c] += (2.0 / 3.0) * ((w.u2[i][c] - q[i][c]) + dt * w.L[i][c]);
  sys.constrain(q, t + dt);
}

/// Stopping rules and observers for a run.
template <int D>
struct RunControl {
  double t_final = 0.0;
  long max_steps = -1;        // stop after this many steps when >= 0
  std::vector<double> stops;  // snapshot times; steps are shortened to land on them
  std::function<void(long, double, const std::vector<Cons<D>>&)> on_step;
  std::function<void(double, const std::vector<Cons<D>>&)> on_stop;
};

struct RunStats {
  long steps = 0;
  double t = 0.0;
};

/// Advance q from t0 to control.t_final (or max_steps). Each step uses
/// dt = sys.max_dt(q), clipped to the next stop time or t_final.
template <int D, class System>
RunStats integrate(System& sys, std::vector<Cons<D>>& q, double t0, const RunControl<D>& control) {
  RkWork<D> work;
  std::vector<double> stops = control.stops;
  std::sort(stops.begin(), stops.end());
  auto next_stop = std::lower_bound(stops.begin(), stops.end(), t0);
  while (next_stop != stops.end() && *next_stop <= t0) {
    if (control.on_stop) control.on_stop(t0, q);
    ++next_stop;
  }

  RunStats st{0, t0};
  while (st.t < control.t_final && (control.max_steps < 0 || st.steps < control.max_steps)) {
    double dt = sys.max_dt(q);
    if (!(dt > 0.0) || !std::isfinite(dt)) throw TimeStepError("non-positive or non-finite time step");
    double target = control.t_final;
    if (next_stop != stops.end()) target = std::min(target, *next_stop);
    bool land = false;
    if (st.t + dt >= target) {
      dt = target - st.t;
      land = true;
    }
    ssp_rk3_step(sys, q, st.t, dt, work);
    st.t = land ? target : st.t + dt;
    ++st.steps;
    if (control.on_step) control.on_step(st.steps, st.t, q);
    while (next_stop != stops.end() && *next_stop <= st.t) {
      if (control.on_stop) control.on_stop(st.t, q);
      ++next_stop;
    }
  }
  return st;
}

}  // namespace wbfv
