#pragma once
// Gravity source terms.
//
// The well-balanced form replaces -rho dphi/dx by a difference of the local
// hydrostatic pressures extrapolated from the cell centre to its two faces. The
// comparator uses a central difference of the potential.

#include <array>

#include "wbfv/gravity.hpp"

namespace wbfv {

enum class SourceKind { WellBalanced, CentralDifference };

/// Momentum source per axis plus the matching energy term.
template <int D>
struct SourceTerm {
  std::array<double, D> momentum{};
  double energy = 0.0;

  /// Energy is always velocity . momentum source.
  static SourceTerm from(const std::array<double, D>& mom, const std::array<double, D>& vel) {
    SourceTerm s;
    s.momentum = mom;
    for (int d = 0; d < D; ++d) s.energy += vel[d] * mom[d];
    return s;
  }
};

/// s_i = (p^L_{i+1/2} - p^R_{i-1/2}) / dx with the hydrostatic face pressures of cell i.
inline SourceTerm<1> wb_source_1d(double p, double theta, double u, double phi_m, double phi_0, double phi_p,
                                  double dx) {
  const FacePressures f = hydrostatic_face_pressures(p, theta, phi_m, phi_0, phi_p);
  return SourceTerm<1>::from({(f.right - f.left) / dx}, {u});
}

/// s_i = -rho_i (phi_{i+1} - phi_{i-1}) / (2 dx).
inline SourceTerm<1> nwb_source_1d(double rho, double u, double phi_m, double phi_p, double dx) {
  return SourceTerm<1>::from({-rho * (phi_p - phi_m) / (2.0 * dx)}, {u});
}

/// One-sided wall form at a half cell whose wall face is on the low side:
/// (p^L_{3/2} - p_wall) / (dx / 2).
inline double wb_wall_momentum_source(double p, double theta, double phi_0, double phi_p, double dx) {
  return (hydrostatic_face_pressures(p, theta, phi_0, phi_0, phi_p).right - p) / (0.5 * dx);
}

/// Potentials and spacing along one axis of a 2D node.
struct AxisStencil {
  double phi_m = 0.0;
  double phi_0 = 0.0;
  double phi_p = 0.0;
  double h = 1.0;
  enum class Side { Interior, WallLow, WallHigh } side = Side::Interior;
};

/// Dimension-split well-balanced source at a 2D node. Wall half cells use the
/// one-sided form with the node's own pressure standing in for the wall face.
inline SourceTerm<2> wb_source_2d(double p, double theta, const std::array<double, 2>& vel, const AxisStencil& ax,
                                  const AxisStencil& ay) {
  auto axis_term = [&](const AxisStencil& a) {
    switch (a.side) {
      case AxisStencil::Side::WallLow: return wb_wall_momentum_source(p, theta, a.phi_0, a.phi_p, a.h);
      case AxisStencil::Side::WallHigh:
        return (p - hydrostatic_face_pressures(p, theta, a.phi_m, a.phi_0, a.phi_0).left) / (0.5 * a.h);
      case AxisStencil::Side::Interior: break;
    }
    const FacePressures f = hydrostatic_face_pressures(p, theta, a.phi_m, a.phi_0, a.phi_p);
    return (f.right - f.left) / a.h;
  };
  return SourceTerm<2>::from({axis_term(ax), axis_term(ay)}, vel);
}

}  // namespace wbfv
