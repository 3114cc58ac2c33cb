#pragma once
// One-dimensional sweep shared by the 1D solver and both 2D directions.
//
// A line holds n cells plus two ghost slots on each side. The kernel computes
// every face flux once, then assembles -(F_{k+1/2} - F_{k-1/2}) / h + source for
// each cell along the sweep axis. Ends come in three kinds:
//   Ghost   ghost slots hold real states (periodic, extrapolated, exact data)
//   Mirror  solid wall half way between cell 0 and ghost -1; ghost slots hold
//           the mirror image, and at the wall face the reconstruction uses the
//           exact mirror of the interior w values
//   Wall    cell 0 sits on a solid wall and is half a cell wide

#include <cmath>
#include <string>
#include <vector>

#include "wbfv/eos.hpp"
#include "wbfv/flux.hpp"
#include "wbfv/gravity.hpp"
#include "wbfv/reconstruct.hpp"
#include "wbfv/source.hpp"
#include "wbfv/state.hpp"

namespace wbfv {

enum class FluxKind { Hllc };

enum class Boundary { Periodic, Wall, Transmissive, DirichletExact };

enum class LineEnd { Ghost, Mirror, Wall };

enum class Side { Low, High };

struct SchemeConfig {
  SourceKind source = SourceKind::WellBalanced;
  FluxKind flux = FluxKind::Hllc;
  ReconConfig recon{};
  double cfl = 0.4;

  [[nodiscard]] bool well_balanced() const { return source == SourceKind::WellBalanced; }
};

template <int D>
FluxVector<D> numerical_flux(FluxKind kind, const Prim<D>& l, const Prim<D>& r, const Eos& eos, int axis) {
  switch (kind) {
    case FluxKind::Hllc: return hllc(l, r, eos, axis);
  }
  return hllc(l, r, eos, axis);
}

template <int D>
struct LineWork {
  int n = 0;
  std::vector<Prim<D>> v;        // n + 4, slot k + 2 holds cell k
  std::vector<Cons<D>> q;        // conserved copies, read by the comparator scheme
  std::vector<double> theta;     // p / rho per cell
  std::vector<double> phi;       // nodal potential per cell
  std::vector<Cons<D>> out;      // n time derivatives
  std::vector<FluxVector<D>> flux;  // n + 1 faces, face f between cells f-1 and f
  std::vector<double> pbar_l, pbar_r;  // hydrostatic face pressures from the left and right cell

  void resize(int cells) {
    n = cells;
    v.resize(cells + 4);
    q.resize(cells + 4);
    theta.resize(cells + 4);
    phi.resize(cells + 4);
    out.resize(cells);
    flux.resize(cells + 1);
    pbar_l.resize(cells + 1);
    pbar_r.resize(cells + 1);
  }

  Prim<D>& prim(int k) { return v[k + 2]; }
  Cons<D>& cons(int k) { return q[k + 2]; }
  double& th(int k) { return theta[k + 2]; }
  double& pot(int k) { return phi[k + 2]; }
};

namespace detail {

template <class S>
S mirrored(S s, int axis) {
  s.vec()[axis] = -s.vec()[axis];
  return s;
}

template <class S>
S with_zero_normal(S s, int axis) {
  s.vec()[axis] = 0.0;
  return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Ghost filling. Potentials of the ghost slots are set by the caller.

/// Transmissive end. The well-balanced scheme extrapolates w with zero slope,
/// i.e. the ghost is the boundary cell carried hydrostatically at its own theta;
/// the comparator copies the boundary cell.
template <int D>
void fill_extrapolated(LineWork<D>& w, Side side, bool well_balanced) {
  const int b = side == Side::Low ? 0 : w.n - 1;
  const int dir = side == Side::Low ? -1 : 1;
  for (int g = 1; g <= 2; ++g) {
    const int k = b + dir * g;
    w.th(k) = w.th(b);
    if (well_balanced) {
      const double f = std::exp(-(w.pot(k) - w.pot(b)) / w.th(b));
      w.prim(k) = Prim<D>{w.prim(b).rho * f, w.prim(b).vel, w.prim(b).p * f};
    } else {
      w.prim(k) = w.prim(b);
      w.cons(k) = w.cons(b);
    }
  }
}

/// Reflecting end between cell 0 and ghost -1 (or cell n-1 and ghost n).
/// Ghost g mirrors cell m with the normal velocity negated; the well-balanced
/// scheme mirrors w measured from the wall face.
template <int D>
void fill_mirrored(LineWork<D>& w, Side side, int axis, bool well_balanced) {
  const bool low = side == Side::Low;
  const int c0 = low ? 0 : w.n - 1, c1 = low ? 1 : w.n - 2;
  const int g0 = low ? -1 : w.n, g1 = low ? -2 : w.n + 1;
  w.th(g0) = w.th(c0);
  w.th(g1) = w.th(c1);
  if (!well_balanced) {
    w.prim(g0) = detail::mirrored(w.prim(c0), axis);
    w.prim(g1) = detail::mirrored(w.prim(c1), axis);
    w.cons(g0) = detail::mirrored(w.cons(c0), axis);
    w.cons(g1) = detail::mirrored(w.cons(c1), axis);
    return;
  }
  // psi from the wall face for the ordered stencil (g1, g0, c0, c1) or (c1, c0, g0, g1).
  const PsiStencil ps = low ? psi_stencil({w.pot(g1), w.pot(g0), w.pot(c0), w.pot(c1)},
                                          {w.th(g1), w.th(g0), w.th(c0), w.th(c1)})
                            : psi_stencil({w.pot(c1), w.pot(c0), w.pot(g0), w.pot(g1)},
                                          {w.th(c1), w.th(c0), w.th(g0), w.th(g1)});
  const double psi_g0 = low ? ps.i : ps.ip1, psi_c0 = low ? ps.ip1 : ps.i;
  const double psi_g1 = low ? ps.im1 : ps.ip2, psi_c1 = low ? ps.ip2 : ps.im1;
  auto image = [&](int c, double psi_g, double psi_c) {
    const double f = std::exp(psi_g - psi_c);
    Prim<D> s = detail::mirrored(w.prim(c), axis);
    s.rho *= f;
    s.p *= f;
    return s;
  };
  w.prim(g0) = image(c0, psi_g0, psi_c0);
  w.prim(g1) = image(c1, psi_g1, psi_c1);
}

/// Periodic end: ghost k takes cell (k mod period). The 1D grid uses period n;
/// the cell-vertex grid duplicates its first node at the far end and uses n - 1.
template <int D>
void fill_wrapped(LineWork<D>& w, Side side, int period) {
  const int dir = side == Side::Low ? -1 : 1;
  const int b = side == Side::Low ? 0 : w.n - 1;
  for (int g = 1; g <= 2; ++g) {
    const int k = b + dir * g;
    const int src = ((k % period) + period) % period;
    w.prim(k) = w.prim(src);
    w.cons(k) = w.cons(src);
    w.th(k) = w.th(src);
  }
}

/// Wall-node ends never read their ghost slots; fill them with finite copies.
template <int D>
void fill_placeholders(LineWork<D>& w, Side side) {
  const int b = side == Side::Low ? 0 : w.n - 1;
  const int dir = side == Side::Low ? -1 : 1;
  for (int g = 1; g <= 2; ++g) {
    const int k = b + dir * g;
    w.prim(k) = w.prim(b);
    w.cons(k) = w.cons(b);
    w.th(k) = w.th(b);
    w.pot(k) = w.pot(b);
  }
}

// ---------------------------------------------------------------------------
// Sweep kernel.

/// Maps a line-local cell index to the global index reported in errors.
struct CellIndexMap {
  long base = 0;
  long stride = 1;
  [[nodiscard]] long operator()(int k) const { return base + stride * k; }
};

template <int D>
void line_rhs(LineWork<D>& w, const Eos& eos, int axis, double h, LineEnd low, LineEnd high,
              const SchemeConfig& cfg, CellIndexMap index = {}) {
  const int n = w.n;
  const bool wb = cfg.well_balanced();
  const int f_begin = low == LineEnd::Wall ? 1 : 0;
  const int f_end = high == LineEnd::Wall ? n - 1 : n;

  for (int f = f_begin; f <= f_end; ++f) {
    const int a = f - 1, b = f;
    try {
      Prim<D> L, R;
      if (wb) {
        const PsiStencil ps = psi_stencil({w.pot(a - 1), w.pot(a), w.pot(b), w.pot(b + 1)},
                                          {w.th(a - 1), w.th(a), w.th(b), w.th(b + 1)});
        WState<D> s0 = to_w_scaled(w.prim(a - 1), std::exp(-ps.im1));
        WState<D> s1 = to_w_scaled(w.prim(a), std::exp(-ps.i));
        WState<D> s2 = to_w_scaled(w.prim(b), std::exp(-ps.ip1));
        WState<D> s3 = to_w_scaled(w.prim(b + 1), std::exp(-ps.ip2));
        if (f == 0 && low == LineEnd::Mirror) {
          s1 = detail::mirrored(s2, axis);
          s0 = detail::mirrored(s3, axis);
        }
        if (f == n && high == LineEnd::Mirror) {
          s2 = detail::mirrored(s1, axis);
          s3 = detail::mirrored(s0, axis);
        }
        std::pair<WState<D>, WState<D>> lr;
        if (f == 1 && low == LineEnd::Wall)
          lr = face_states_left_wall(detail::with_zero_normal(s1, axis), s2, s3, cfg.recon);
        else if (f == n - 1 && high == LineEnd::Wall)
          lr = face_states_right_wall(s0, s1, detail::with_zero_normal(s2, axis), cfg.recon);
        else
          lr = face_states(s0, s1, s2, s3, cfg.recon);
        // psi vanishes at the face, so w there equals the primitive state.
        L = Prim<D>{lr.first.w_rho, lr.first.vel, lr.first.w_p};
        R = Prim<D>{lr.second.w_rho, lr.second.vel, lr.second.w_p};
        w.pbar_l[f] = s1.w_p;
        w.pbar_r[f] = s2.w_p;
      } else {
        std::pair<Cons<D>, Cons<D>> lr;
        if (f == 1 && low == LineEnd::Wall)
          lr = face_states_left_wall(detail::with_zero_normal(w.cons(a), axis), w.cons(b), w.cons(b + 1),
                                     cfg.recon);
        else if (f == n - 1 && high == LineEnd::Wall)
          lr = face_states_right_wall(w.cons(a - 1), w.cons(a), detail::with_zero_normal(w.cons(b), axis),
                                      cfg.recon);
        else
          lr = face_states(w.cons(a - 1), w.cons(a), w.cons(b), w.cons(b + 1), cfg.recon);
        L = cons_to_prim(lr.first, eos, index(a));
        R = cons_to_prim(lr.second, eos, index(b));
      }
      w.flux[f] = numerical_flux(cfg.flux, L, R, eos, axis);
    } catch (const UnphysicalState&) {
      throw;
    } catch (const Error& e) {
      throw UnphysicalState(std::string("face state rejected: ") + e.what(), index(b));
    }
  }

  for (int k = 0; k < n; ++k) {
    const Prim<D>& s = w.prim(k);
    Cons<D>& o = w.out[k];
    double src;
    const bool wall_low = k == 0 && low == LineEnd::Wall;
    const bool wall_high = k == n - 1 && high == LineEnd::Wall;
    if (wall_low || wall_high) {
      const double hh = 0.5 * h;
      const FluxVector<D> fw = wall_flux<D>(s.p, axis);
      o = wall_low ? fw - w.flux[1] : w.flux[n - 1] - fw;
      for (int c = 0; c < Cons<D>::size; ++c) o[c] /= hh;
      if (wb)
        src = wall_low ? (w.pbar_l[1] - s.p) / hh : (s.p - w.pbar_r[n - 1]) / hh;
      else
        src = wall_low ? -s.rho * (w.pot(1) - w.pot(0)) / h : -s.rho * (w.pot(n - 1) - w.pot(n - 2)) / h;
    } else {
      o = w.flux[k] - w.flux[k + 1];
      for (int c = 0; c < Cons<D>::size; ++c) o[c] /= h;
      if (wb)
        src = (w.pbar_l[k + 1] - w.pbar_r[k]) / h;
      else
        src = nwb_source_1d(s.rho, 0.0, w.pot(k - 1), w.pot(k + 1), h).momentum[0];
    }
    o.mom[axis] += src;
    o.E += s.vel[axis] * src;
  }
}

}  // namespace wbfv
