#pragma once
// Cell-vertex 2D solver with dimension-split sweeps.
//
// Nodes sit at x_i = xmin + i dx, i = 0..nx-1. Nodes on a solid wall own half a
// control volume (a quarter at wall-wall corners); their wall-normal momentum is
// held at zero. A periodic direction stores its first node twice, at both ends.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "wbfv/eos.hpp"
#include "wbfv/gravity.hpp"
#include "wbfv/line.hpp"
#include "wbfv/state.hpp"
#include "wbfv/timestep.hpp"

namespace wbfv {

struct Grid2D {
  int nx = 0, ny = 0;
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  double dx = 0.0, dy = 0.0;
  Boundary left = Boundary::Transmissive, right = Boundary::Transmissive;
  Boundary bottom = Boundary::Transmissive, top = Boundary::Transmissive;

  Grid2D() = default;
  Grid2D(int nodes_x, int nodes_y, double x0, double x1, double y0, double y1, Boundary l, Boundary r, Boundary b,
         Boundary t)
      : nx(nodes_x), ny(nodes_y), xmin(x0), xmax(x1), ymin(y0), ymax(y1), dx((x1 - x0) / (nodes_x - 1)),
        dy((y1 - y0) / (nodes_y - 1)), left(l), right(r), bottom(b), top(t) {
    if (nodes_x < 5 || nodes_y < 5) throw ConfigError("Grid2D needs at least 5 nodes per direction");
    if (!(x1 > x0) || !(y1 > y0)) throw ConfigError("Grid2D needs positive extents");
    if ((l == Boundary::Periodic) != (r == Boundary::Periodic) || (b == Boundary::Periodic) != (t == Boundary::Periodic))
      throw ConfigError("periodic boundaries must be set on both ends of a direction");
  }

  [[nodiscard]] double x(int i) const { return xmin + i * dx; }
  [[nodiscard]] double y(int j) const { return ymin + j * dy; }
  [[nodiscard]] std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }

  [[nodiscard]] bool wall_x(int i) const {
    return (i == 0 && left == Boundary::Wall) || (i == nx - 1 && right == Boundary::Wall);
  }
  [[nodiscard]] bool wall_y(int j) const {
    return (j == 0 && bottom == Boundary::Wall) || (j == ny - 1 && top == Boundary::Wall);
  }

  /// Control-volume weight relative to dx dy: 1, 1/2 on wall edges, 1/4 at wall corners.
  [[nodiscard]] double weight(int i, int j) const { return (wall_x(i) ? 0.5 : 1.0) * (wall_y(j) ? 0.5 : 1.0); }

  /// False for the duplicate last node of a periodic direction.
  [[nodiscard]] bool unique(int i, int j) const {
    return !((i == nx - 1 && left == Boundary::Periodic) || (j == ny - 1 && bottom == Boundary::Periodic));
  }

  [[nodiscard]] bool dirichlet_node(int i, int j) const {
    return (i == 0 && left == Boundary::DirichletExact) || (i == nx - 1 && right == Boundary::DirichletExact) ||
           (j == 0 && bottom == Boundary::DirichletExact) || (j == ny - 1 && top == Boundary::DirichletExact);
  }
};

class Solver2D {
 public:
  using State = std::vector<Cons<2>>;
  using ExactFn = std::function<Prim<2>(double x, double y, double t)>;

  Solver2D(Grid2D grid, Eos eos, Potential pot, SchemeConfig cfg, ExactFn exact = {})
      : g_(grid), eos_(std::move(eos)), pot_(std::move(pot)), cfg_(cfg), exact_(std::move(exact)) {
    cfg_.recon.validate();
    if (!(cfg_.cfl > 0.0 && cfg_.cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
    const bool needs_exact = g_.left == Boundary::DirichletExact || g_.right == Boundary::DirichletExact ||
                             g_.bottom == Boundary::DirichletExact || g_.top == Boundary::DirichletExact;
    if (needs_exact && !exact_) throw ConfigError("dirichlet_exact boundaries need an exact solution");
    rowx_.resize(g_.nx);
    coly_.resize(g_.ny);
    phi_.resize(g_.size());
    for (int j = 0; j < g_.ny; ++j)
      for (int i = 0; i < g_.nx; ++i) phi_[g_.index(i, j)] = pot_(g_.x(i), g_.y(j));
    // Ghost potentials: four per row and per column.
    ghost_phi_rows_.resize(static_cast<std::size_t>(g_.ny) * 4);
    ghost_phi_cols_.resize(static_cast<std::size_t>(g_.nx) * 4);
    const int gx[4] = {-2, -1, g_.nx, g_.nx + 1};
    const int gy[4] = {-2, -1, g_.ny, g_.ny + 1};
    for (int j = 0; j < g_.ny; ++j)
      for (int s = 0; s < 4; ++s)
        ghost_phi_rows_[static_cast<std::size_t>(j) * 4 + s] =
            g_.left == Boundary::Periodic ? phi_[g_.index(wrap(gx[s], g_.nx - 1), j)] : pot_(g_.x(gx[s]), g_.y(j));
    for (int i = 0; i < g_.nx; ++i)
      for (int s = 0; s < 4; ++s)
        ghost_phi_cols_[static_cast<std::size_t>(i) * 4 + s] =
            g_.bottom == Boundary::Periodic ? phi_[g_.index(i, wrap(gy[s], g_.ny - 1))] : pot_(g_.x(i), g_.y(gy[s]));
  }

  [[nodiscard]] const Grid2D& grid() const { return g_; }
  [[nodiscard]] const Eos& eos() const { return eos_; }
  [[nodiscard]] const Potential& potential() const { return pot_; }
  [[nodiscard]] const SchemeConfig& config() const { return cfg_; }
  [[nodiscard]] const std::vector<double>& nodal_potential() const { return phi_; }

  void rhs(const State& q, double t, State& out) {
    const std::size_t n = g_.size();
    if (q.size() != n) throw ConfigError("state size does not match the grid");
    prim_.resize(n);
    theta_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      prim_[k] = cons_to_prim(q[k], eos_, static_cast<long>(k));
      theta_[k] = prim_[k].p / prim_[k].rho;
    }
    xpart_.resize(n);
    ypart_.resize(n);

    for (int j = 0; j < g_.ny; ++j) {
      for (int i = 0; i < g_.nx; ++i) load(rowx_, i, q, g_.index(i, j));
      for (int s = 0; s < 2; ++s) rowx_.pot(s - 2) = ghost_phi_rows_[static_cast<std::size_t>(j) * 4 + s];
      for (int s = 0; s < 2; ++s) rowx_.pot(g_.nx + s) = ghost_phi_rows_[static_cast<std::size_t>(j) * 4 + 2 + s];
      fill(rowx_, Side::Low, g_.left, 0, t, [&](int k) { return std::pair{g_.x(k), g_.y(j)}; });
      fill(rowx_, Side::High, g_.right, 0, t, [&](int k) { return std::pair{g_.x(k), g_.y(j)}; });
      line_rhs(rowx_, eos_, 0, g_.dx, end(g_.left), end(g_.right), cfg_,
               CellIndexMap{static_cast<long>(g_.index(0, j)), 1});
      for (int i = 0; i < g_.nx; ++i) xpart_[g_.index(i, j)] = rowx_.out[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < g_.nx; ++i) {
      for (int j = 0; j < g_.ny; ++j) load(coly_, j, q, g_.index(i, j));
      for (int s = 0; s < 2; ++s) coly_.pot(s - 2) = ghost_phi_cols_[static_cast<std::size_t>(i) * 4 + s];
      for (int s = 0; s < 2; ++s) coly_.pot(g_.ny + s) = ghost_phi_cols_[static_cast<std::size_t>(i) * 4 + 2 + s];
      fill(coly_, Side::Low, g_.bottom, 1, t, [&](int k) { return std::pair{g_.x(i), g_.y(k)}; });
      fill(coly_, Side::High, g_.top, 1, t, [&](int k) { return std::pair{g_.x(i), g_.y(k)}; });
      line_rhs(coly_, eos_, 1, g_.dy, end(g_.bottom), end(g_.top), cfg_,
               CellIndexMap{static_cast<long>(g_.index(i, 0)), g_.nx});
      for (int j = 0; j < g_.ny; ++j) ypart_[g_.index(i, j)] = coly_.out[static_cast<std::size_t>(j)];
    }

    out.resize(n);
    for (int j = 0; j < g_.ny; ++j)
      for (int i = 0; i < g_.nx; ++i) {
        const std::size_t k = g_.index(i, j);
        Cons<2>& o = out[k];
        for (int c = 0; c < Cons<2>::size; ++c) o[c] = xpart_[k][c] + ypart_[k][c];
        if (g_.wall_x(i)) o.mom[0] = 0.0;
        if (g_.wall_y(j)) o.mom[1] = 0.0;
        if (g_.dirichlet_node(i, j)) o = Cons<2>{};
      }
  }

  State rhs(const State& q, double t = 0.0) {
    State out;
    rhs(q, t, out);
    return out;
  }

  /// Imposes exact data on dirichlet_exact boundary nodes.
  void constrain(State& q, double t) const {
    if (!exact_) return;
    for (int j = 0; j < g_.ny; ++j)
      for (int i = 0; i < g_.nx; ++i)
        if (g_.dirichlet_node(i, j)) q[g_.index(i, j)] = prim_to_cons(exact_(g_.x(i), g_.y(j), t), eos_);
  }

  /// dt = cfl / max((|u| + c)/dx + (|v| + c)/dy).
  [[nodiscard]] double max_dt(const State& q) const {
    double rate = 0.0;
    for (std::size_t k = 0; k < q.size(); ++k) {
      const Prim<2> v = cons_to_prim(q[k], eos_, static_cast<long>(k));
      const double c = sound_speed(eos_, v.rho, v.p);
      rate = std::max(rate, (std::abs(v.vel[0]) + c) / g_.dx + (std::abs(v.vel[1]) + c) / g_.dy);
    }
    if (!(rate > 0.0)) throw TimeStepError("maximum wave speed is zero");
    return cfg_.cfl / rate;
  }

  void step(State& q, double t, double dt) { ssp_rk3_step(*this, q, t, dt, work_); }

 private:
  static int wrap(int k, int period) { return ((k % period) + period) % period; }

  static LineEnd end(Boundary b) { return b == Boundary::Wall ? LineEnd::Wall : LineEnd::Ghost; }

  void load(LineWork<2>& w, int k, const State& q, std::size_t node) {
    w.prim(k) = prim_[node];
    w.cons(k) = q[node];
    w.th(k) = theta_[node];
    w.pot(k) = phi_[node];
  }

  template <class Coord>
  void fill(LineWork<2>& w, Side side, Boundary b, int axis, double t, Coord coord) {
    const bool wb = cfg_.well_balanced();
    switch (b) {
      case Boundary::Periodic: fill_wrapped(w, side, w.n - 1); break;
      case Boundary::Wall: fill_placeholders(w, side); break;
      case Boundary::Transmissive: fill_extrapolated(w, side, wb); break;
      case Boundary::DirichletExact: {
        const int base = side == Side::Low ? 0 : w.n - 1;
        const int dir = side == Side::Low ? -1 : 1;
        for (int g = 1; g <= 2; ++g) {
          const int k = base + dir * g;
          const auto [x, y] = coord(k);
          w.prim(k) = exact_(x, y, t);
          w.cons(k) = prim_to_cons(w.prim(k), eos_);
          w.th(k) = w.prim(k).p / w.prim(k).rho;
        }
        break;
      }
    }
    (void)axis;
  }

  Grid2D g_;
  Eos eos_;
  Potential pot_;
  SchemeConfig cfg_;
  ExactFn exact_;
  std::vector<double> phi_, ghost_phi_rows_, ghost_phi_cols_;
  std::vector<Prim<2>> prim_;
  std::vector<double> theta_;
  State xpart_, ypart_;
  LineWork<2> rowx_, coly_;
  RkWork<2> work_;
};

}  // namespace wbfv
