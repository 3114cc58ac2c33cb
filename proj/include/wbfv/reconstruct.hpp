#pragma once
// MUSCL reconstruction with the three-argument minmod limiter.

#include <algorithm>
#include <cmath>
#include <utility>

#include "wbfv/error.hpp"
#include "wbfv/state.hpp"

namespace wbfv {

enum class ReconScheme { MusclMinmod, FirstOrder };

struct ReconConfig {
  double kappa = 2.0;  // limiter steepness, 1 <= kappa <= 2
  ReconScheme scheme = ReconScheme::MusclMinmod;

  void validate() const {
    if (!(kappa >= 1.0 && kappa <= 2.0)) throw ConfigError("recon.kappa must lie in [1, 2]");
  }
};

constexpr double minmod3(double a, double b, double c) {
  if (a > 0.0 && b > 0.0 && c > 0.0) return std::min({a, b, c});
  if (a < 0.0 && b < 0.0 && c < 0.0) return std::max({a, b, c});
  return 0.0;
}

/// Limited slope of cell i from its two neighbours.
constexpr double limited_slope(double left, double centre, double right, double kappa) {
  return minmod3(kappa * (centre - left), 0.5 * (right - left), kappa * (right - centre));
}

/// Left and right states at face i+1/2 from cells i-1, i, i+1, i+2.
/// Works componentwise on any indexed state record (WState, Cons, Prim).
template <class S>
std::pair<S, S> face_states(const S& im1, const S& i, const S& ip1, const S& ip2, const ReconConfig& cfg) {
  if (cfg.scheme == ReconScheme::FirstOrder) return {i, ip1};
  S left = i;
  S right = ip1;
  constexpr int n = S::size;
  for (int k = 0; k < n; ++k) {
    left[k] = i[k] + 0.5 * limited_slope(im1[k], i[k], ip1[k], cfg.kappa);
    right[k] = ip1[k] - 0.5 * limited_slope(i[k], ip1[k], ip2[k], cfg.kappa);
  }
  return {left, right};
}

/// Right state at face i+1/2 when cell i has no left neighbour (wall node):
/// cell i is used unreconstructed, cell i+1 gets its limited slope.
template <class S>
std::pair<S, S> face_states_left_wall(const S& i, const S& ip1, const S& ip2, const ReconConfig& cfg) {
  if (cfg.scheme == ReconScheme::FirstOrder) return {i, ip1};
  S right = ip1;
  constexpr int n = S::size;
  for (int k = 0; k < n; ++k) right[k] = ip1[k] - 0.5 * limited_slope(i[k], ip1[k], ip2[k], cfg.kappa);
  return {i, right};
}

/// Mirror image of face_states_left_wall: cell i+1 sits on the wall.
template <class S>
std::pair<S, S> face_states_right_wall(const S& im1, const S& i, const S& ip1, const ReconConfig& cfg) {
  if (cfg.scheme == ReconScheme::FirstOrder) return {i, ip1};
  S left = i;
  constexpr int n = S::size;
  for (int k = 0; k < n; ++k) left[k] = i[k] + 0.5 * limited_slope(im1[k], i[k], ip1[k], cfg.kappa);
  return {left, ip1};
}

}  // namespace wbfv
