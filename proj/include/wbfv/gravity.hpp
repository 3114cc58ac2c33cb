#pragma once
// Gravitational potential and the face-relative hydrostatic exponent psi.
//
// The potential is interpolated piecewise linearly between nodes and theta = p / rho
// is held constant over each cell, so psi(x) = -int phi_h'(s) / theta_h(s) ds is
// evaluated exactly by summing half-cell contributions. psi is always measured
// from a particular face; only differences of psi enter the scheme.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "wbfv/error.hpp"

namespace wbfv {

/// psi at the four cells around face i+1/2, measured from that face.
struct PsiStencil {
  double im1 = 0.0;  // cell i-1
  double i = 0.0;    // cell i
  double ip1 = 0.0;  // cell i+1
  double ip2 = 0.0;  // cell i+2
};

/// psi values of cells i-1..i+2 relative to face i+1/2.
/// `phi` holds nodal potentials phi_{i-1..i+2}, `theta` the cell values of p / rho.
inline PsiStencil psi_stencil(const std::array<double, 4>& phi, const std::array<double, 4>& theta) {
  for (double t : theta)
    if (!(t > 0.0)) throw InvalidThermoState("psi stencil needs positive theta");
  const double face_m = 0.5 * (phi[0] + phi[1]);  // i-1/2
  const double face_0 = 0.5 * (phi[1] + phi[2]);  // i+1/2
  const double face_p = 0.5 * (phi[2] + phi[3]);  // i+3/2
  PsiStencil s;
  s.i = -(phi[1] - face_0) / theta[1];
  s.ip1 = -(phi[2] - face_0) / theta[2];
  s.im1 = -(phi[0] - face_m) / theta[0] - (face_m - face_0) / theta[1];
  s.ip2 = -(phi[3] - face_p) / theta[3] - (face_p - face_0) / theta[2];
  return s;
}

/// Local hydrostatic pressures extrapolated from the centre of cell i to its faces.
struct FacePressures {
  double right;  // at x_{i+1/2}, seen from inside cell i
  double left;   // at x_{i-1/2}, seen from inside cell i
};

inline FacePressures hydrostatic_face_pressures(double p, double theta, double phi_m, double phi_0,
                                                double phi_p) {
  return {p * std::exp(-(phi_p - phi_0) / (2.0 * theta)), p * std::exp((phi_0 - phi_m) / (2.0 * theta))};
}

/// Static gravitational potential. Either a named analytic profile or nodal
/// samples interpolated linearly in x.
class Potential {
 public:
  enum class Kind { Constant, Linear, Quadratic, Sine, Radial, ConstantGY, Nodal };

  static Potential constant() { return Potential(Kind::Constant); }
  /// phi = gx x + gy y
  static Potential linear(double gx = 1.0, double gy = 0.0) {
    Potential p(Kind::Linear);
    p.a_ = gx;
    p.b_ = gy;
    return p;
  }
  /// phi = 0.5 k (x^2 + y^2)
  static Potential quadratic(double k = 1.0) {
    Potential p(Kind::Quadratic);
    p.a_ = k;
    return p;
  }
  /// phi = amplitude sin(2 pi x / wavelength)
  static Potential sine(double amplitude = 1.0, double wavelength = 1.0) {
    Potential p(Kind::Sine);
    p.a_ = amplitude;
    p.b_ = wavelength;
    return p;
  }
  /// phi = g |x - centre|
  static Potential radial(double g = 1.0, double xc = 0.0, double yc = 0.0) {
    Potential p(Kind::Radial);
    p.a_ = g;
    p.xc_ = xc;
    p.yc_ = yc;
    return p;
  }
  /// phi = g y
  static Potential constant_g_y(double g) {
    Potential p(Kind::ConstantGY);
    p.a_ = g;
    return p;
  }
  /// Nodal samples (x_k, phi_k) with strictly increasing x; evaluated by linear
  /// interpolation and linear extrapolation outside the samples.
  static Potential nodal(std::vector<double> x, std::vector<double> phi) {
    if (x.size() < 2 || x.size() != phi.size()) throw ConfigError("nodal potential needs >= 2 matching samples");
    for (std::size_t k = 1; k < x.size(); ++k)
      if (!(x[k] > x[k - 1])) throw ConfigError("nodal potential abscissae must increase");
    for (double v : phi)
      if (!std::isfinite(v)) throw ConfigError("nodal potential values must be finite");
    Potential p(Kind::Nodal);
    p.xs_ = std::move(x);
    p.vals_ = std::move(phi);
    return p;
  }

  [[nodiscard]] Kind kind() const noexcept { return kind_; }

  [[nodiscard]] double operator()(double x, double y = 0.0) const {
    switch (kind_) {
      case Kind::Constant: return 0.0;
      case Kind::Linear: return a_ * x + b_ * y;
      case Kind::Quadratic: return 0.5 * a_ * (x * x + y * y);
      case Kind::Sine: return a_ * std::sin(2.0 * std::numbers::pi * x / b_);
      case Kind::Radial: return a_ * std::hypot(x - xc_, y - yc_);
      case Kind::ConstantGY: return a_ * y;
      case Kind::Nodal: return nodal_value(x);
    }
    return 0.0;
  }

  /// Analytic gradient (dphi/dx, dphi/dy). The radial kink returns zero at its centre.
  [[nodiscard]] std::array<double, 2> gradient(double x, double y = 0.0) const {
    switch (kind_) {
      case Kind::Constant: return {0.0, 0.0};
      case Kind::Linear: return {a_, b_};
      case Kind::Quadratic: return {a_ * x, a_ * y};
      case Kind::Sine: {
        const double k = 2.0 * std::numbers::pi / b_;
        return {a_ * k * std::cos(k * x), 0.0};
      }
      case Kind::Radial: {
        const double r = std::hypot(x - xc_, y - yc_);
        if (r == 0.0) return {0.0, 0.0};
        return {a_ * (x - xc_) / r, a_ * (y - yc_) / r};
      }
      case Kind::ConstantGY: return {0.0, a_};
      case Kind::Nodal: {
        const std::size_t k = segment(x);
        return {(vals_[k + 1] - vals_[k]) / (xs_[k + 1] - xs_[k]), 0.0};
      }
    }
    return {0.0, 0.0};
  }

  [[nodiscard]] std::string describe() const {
    switch (kind_) {
      case Kind::Constant: return "constant";
      case Kind::Linear: return "linear";
      case Kind::Quadratic: return "quadratic";
      case Kind::Sine: return "sine";
      case Kind::Radial: return "radial";
      case Kind::ConstantGY: return "constant-g-y";
      case Kind::Nodal: return "nodal";
    }
    return "unknown";
  }

 private:
  explicit Potential(Kind k) : kind_(k) {}

  [[nodiscard]] std::size_t segment(double x) const {
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    const auto k = static_cast<std::ptrdiff_t>(it - xs_.begin()) - 1;
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(k, 0, static_cast<std::ptrdiff_t>(xs_.size()) - 2));
  }

  [[nodiscard]] double nodal_value(double x) const {
    const std::size_t k = segment(x);
    const double t = (x - xs_[k]) / (xs_[k + 1] - xs_[k]);
    return (1.0 - t) * vals_[k] + t * vals_[k + 1];
  }

  Kind kind_;
  double a_ = 0.0, b_ = 0.0, xc_ = 0.0, yc_ = 0.0;
  std::vector<double> xs_, vals_;
};

}  // namespace wbfv
