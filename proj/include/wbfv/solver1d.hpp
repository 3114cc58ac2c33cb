#pragma once
// Cell-centred 1D solver: ghost filling, right-hand side and CFL step.

#include <algorithm>
#include <cmath>
#include <vector>

#include "wbfv/eos.hpp"
#include "wbfv/gravity.hpp"
#include "wbfv/line.hpp"
#include "wbfv/state.hpp"
#include "wbfv/timestep.hpp"

namespace wbfv {

struct Grid1D {
  int n = 0;
  double xmin = 0.0, xmax = 1.0, dx = 0.0;
  Boundary left = Boundary::Transmissive, right = Boundary::Transmissive;

  Grid1D() = default;
  Grid1D(int cells, double lo, double hi, Boundary l, Boundary r)
      : n(cells), xmin(lo), xmax(hi), dx((hi - lo) / cells), left(l), right(r) {
    if (cells < 4) throw ConfigError("Grid1D needs at least 4 cells");
    if (!(hi > lo)) throw ConfigError("Grid1D needs xmax > xmin");
    if ((l == Boundary::Periodic) != (r == Boundary::Periodic))
      throw ConfigError("periodic boundaries must be set on both ends");
    if (l == Boundary::DirichletExact || r == Boundary::DirichletExact)
      throw ConfigError("dirichlet_exact boundaries are only available in 2D");
  }

  /// Centre of cell i (0-based; negative and >= n give ghost centres).
  [[nodiscard]] double x(int i) const { return xmin + (i + 0.5) * dx; }

  [[nodiscard]] std::vector<double> centers() const {
    std::vector<double> c(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = x(i);
    return c;
  }
};

class Solver1D {
 public:
  using State = std::vector<Cons<1>>;

  Solver1D(Grid1D grid, Eos eos, Potential pot, SchemeConfig cfg)
      : grid_(grid), eos_(std::move(eos)), pot_(std::move(pot)), cfg_(cfg) {
    cfg_.recon.validate();
    if (!(cfg_.cfl > 0.0 && cfg_.cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
    line_.resize(grid_.n);
    for (int k = 0; k < grid_.n; ++k) line_.pot(k) = pot_(grid_.x(k));
    const bool periodic = grid_.left == Boundary::Periodic;
    for (int k : {-2, -1, grid_.n, grid_.n + 1}) {
      line_.pot(k) = periodic ? line_.pot(((k % grid_.n) + grid_.n) % grid_.n) : pot_(grid_.x(k));
    }
  }

  [[nodiscard]] const Grid1D& grid() const { return grid_; }
  [[nodiscard]] const Eos& eos() const { return eos_; }
  [[nodiscard]] const Potential& potential() const { return pot_; }
  [[nodiscard]] const SchemeConfig& config() const { return cfg_; }

  /// Nodal potential at cell centres.
  [[nodiscard]] std::vector<double> nodal_potential() const {
    std::vector<double> out(static_cast<std::size_t>(grid_.n));
    for (int k = 0; k < grid_.n; ++k) out[static_cast<std::size_t>(k)] = line_.phi[static_cast<std::size_t>(k + 2)];
    return out;
  }

  /// Populate the ghost slots of the internal line from the current interior data.
  void fill_ghosts() {
    const bool wb = cfg_.well_balanced();
    auto fill = [&](Side side, Boundary b) {
      switch (b) {
        case Boundary::Periodic: fill_wrapped(line_, side, grid_.n); break;
        case Boundary::Wall: fill_mirrored(line_, side, 0, wb); break;
        case Boundary::Transmissive: fill_extrapolated(line_, side, wb); break;
        case Boundary::DirichletExact: break;
      }
    };
    fill(Side::Low, grid_.left);
    fill(Side::High, grid_.right);
  }

  /// Time derivative of every cell.
  void rhs(const State& q, double /*t*/, State& out) {
    load(q);
    fill_ghosts();
    line_rhs(line_, eos_, 0, grid_.dx, end(grid_.left), end(grid_.right), cfg_);
    out.assign(line_.out.begin(), line_.out.end());
  }

  State rhs(const State& q, double t = 0.0) {
    State out;
    rhs(q, t, out);
    return out;
  }

  void constrain(State&, double) const {}

  /// dt = cfl dx / max(|u| + c).
  [[nodiscard]] double max_dt(const State& q) const {
    double smax = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const Prim<1> v = cons_to_prim(q[i], eos_, static_cast<long>(i));
      smax = std::max(smax, std::abs(v.vel[0]) + sound_speed(eos_, v.rho, v.p));
    }
    if (!(smax > 0.0)) throw TimeStepError("maximum wave speed is zero");
    return cfg_.cfl * grid_.dx / smax;
  }

  void step(State& q, double t, double dt) { ssp_rk3_step(*this, q, t, dt, work_); }

  /// Ghost-inclusive view used by tests: slot k + 2 holds cell k.
  [[nodiscard]] const LineWork<1>& line() const { return line_; }

  void load(const State& q) {
    if (static_cast<int>(q.size()) != grid_.n) throw ConfigError("state size does not match the grid");
    for (int k = 0; k < grid_.n; ++k) {
      const Cons<1>& c = q[static_cast<std::size_t>(k)];
      line_.cons(k) = c;
      line_.prim(k) = cons_to_prim(c, eos_, k);
      line_.th(k) = line_.prim(k).p / line_.prim(k).rho;
    }
  }

 private:
  static LineEnd end(Boundary b) { return b == Boundary::Wall ? LineEnd::Mirror : LineEnd::Ghost; }

  Grid1D grid_;
  Eos eos_;
  Potential pot_;
  SchemeConfig cfg_;
  LineWork<1> line_;
  RkWork<1> work_;
};

template <int D>
std::vector<Cons<D>> to_conserved(const std::vector<Prim<D>>& v, const Eos& eos) {
  std::vector<Cons<D>> q;
  q.reserve(v.size());
  for (const auto& s : v) q.push_back(prim_to_cons(s, eos));
  return q;
}

template <int D>
std::vector<Prim<D>> to_primitive(const std::vector<Cons<D>>& q, const Eos& eos) {
  std::vector<Prim<D>> v;
  v.reserve(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) v.push_back(cons_to_prim(q[i], eos, static_cast<long>(i)));
  return v;
}

}  // namespace wbfv
