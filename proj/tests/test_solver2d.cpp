#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "wbfv/cases.hpp"
#include "wbfv/solver2d.hpp"

using namespace wbfv;

namespace {

const Eos kIdeal{IdealGas{}};

Grid2D square(int n, Boundary b) { return Grid2D(n, n, 0.0, 1.0, 0.0, 1.0, b, b, b, b); }

Solver2D::State isothermal(const Grid2D& g, const Potential& pot) {
  Solver2D::State q(g.size());
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double r = std::exp(-pot(g.x(i), g.y(j)));
      q[g.index(i, j)] = prim_to_cons(Prim<2>{r, {0.0, 0.0}, r}, kIdeal);
    }
  return q;
}

double max_abs(const Solver2D::State& r) {
  double m = 0.0;
  for (const auto& c : r)
    for (int k = 0; k < 4; ++k) m = std::max(m, std::abs(c[k]));
  return m;
}

}  // namespace

TEST(Solver2D, AxisAlignedEquilibriaAtRest) {
  for (auto bc : {Boundary::Wall, Boundary::Transmissive}) {
    for (auto pot : {Potential::linear(0.0, 1.0), Potential::linear(1.0, 0.0), Potential::linear(1.0, 1.0)}) {
      const auto g = square(51, bc);
      Solver2D solver(g, kIdeal, pot, SchemeConfig{});
      EXPECT_LE(max_abs(solver.rhs(isothermal(g, pot))), 1e-12) << to_string(bc);
    }
  }
}

TEST(Solver2D, RadialEquilibriumAtRest) {
  const auto pot = Potential::radial(1.0, 0.5, 0.5);
  const auto g = square(41, Boundary::Transmissive);
  Solver2D solver(g, kIdeal, pot, SchemeConfig{});
  auto q = isothermal(g, pot);
  const auto q0 = q;
  double t = 0.0;
  for (int s = 0; s < 20; ++s) {
    const double dt = solver.max_dt(q);
    solver.step(q, t, dt);
    t += dt;
  }
  for (std::size_t k = 0; k < q.size(); ++k) EXPECT_NEAR(q[k].rho, q0[k].rho, 1e-12);
}

TEST(Solver2D, WallNormalMomentumHeldAtZero) {
  const auto g = square(21, Boundary::Wall);
  Solver2D solver(g, kIdeal, Potential::linear(0.3, 0.7), SchemeConfig{});
  Solver2D::State q(g.size(), prim_to_cons(Prim<2>{1.0, {0.0, 0.0}, 1.0}, kIdeal));
  // a pressure bump drives flow towards every wall
  for (int j = 8; j <= 12; ++j)
    for (int i = 8; i <= 12; ++i) q[g.index(i, j)] = prim_to_cons(Prim<2>{1.0, {0.0, 0.0}, 2.0}, kIdeal);
  double t = 0.0;
  const double m0 = total_mass(q, g);
  for (int s = 0; s < 30; ++s) {
    const double dt = solver.max_dt(q);
    solver.step(q, t, dt);
    t += dt;
  }
  for (int k = 0; k < g.nx; ++k) {
    EXPECT_EQ(q[g.index(0, k)].mom[0], 0.0);
    EXPECT_EQ(q[g.index(g.nx - 1, k)].mom[0], 0.0);
    EXPECT_EQ(q[g.index(k, 0)].mom[1], 0.0);
    EXPECT_EQ(q[g.index(k, g.ny - 1)].mom[1], 0.0);
  }
  EXPECT_LE(std::abs(total_mass(q, g) - m0) / m0, 1e-12);
}

TEST(Solver2D, TransposeSymmetry) {
  const auto setup = build_2d(find_case("iso2d_pert"));
  auto solver = make_solver(setup);
  auto q = setup.q0;
  double t = 0.0;
  const auto& g = setup.grid;
  for (int s = 0; s < 10; ++s) {
    const double dt = solver.max_dt(q);
    solver.step(q, t, dt);
    t += dt;
  }
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const auto& a = q[g.index(i, j)];
      const auto& b = q[g.index(j, i)];
      EXPECT_EQ(a.rho, b.rho);
      EXPECT_EQ(a.mom[0], b.mom[1]);
      EXPECT_EQ(a.E, b.E);
    }
}

TEST(Solver2D, PeriodicUniformFlowUnchanged) {
  const auto g = square(17, Boundary::Periodic);
  Solver2D solver(g, kIdeal, Potential::constant(), SchemeConfig{});
  Solver2D::State q(g.size(), prim_to_cons(Prim<2>{1.0, {0.4, -0.3}, 1.5}, kIdeal));
  const auto q0 = q;
  double t = 0.0;
  for (int s = 0; s < 20; ++s) {
    const double dt = solver.max_dt(q);
    solver.step(q, t, dt);
    t += dt;
  }
  for (std::size_t k = 0; k < q.size(); ++k)
    for (int c = 0; c < 4; ++c) EXPECT_NEAR(q[k][c], q0[k][c], 1e-13);
}

TEST(Grid2D, ControlVolumeWeights) {
  const auto g = square(5, Boundary::Wall);
  EXPECT_EQ(g.weight(0, 0), 0.25);
  EXPECT_EQ(g.weight(4, 4), 0.25);
  EXPECT_EQ(g.weight(0, 2), 0.5);
  EXPECT_EQ(g.weight(2, 4), 0.5);
  EXPECT_EQ(g.weight(2, 2), 1.0);
  const auto t = square(5, Boundary::Transmissive);
  EXPECT_EQ(t.weight(0, 0), 1.0);
  const auto p = square(5, Boundary::Periodic);
  EXPECT_FALSE(p.unique(4, 1));
  EXPECT_FALSE(p.unique(1, 4));
  EXPECT_TRUE(p.unique(3, 3));
  EXPECT_DOUBLE_EQ(g.dx, 0.25);
}

TEST(Grid2D, Validation) {
  EXPECT_THROW(Grid2D(4, 10, 0, 1, 0, 1, Boundary::Wall, Boundary::Wall, Boundary::Wall, Boundary::Wall), ConfigError);
  EXPECT_THROW(Grid2D(10, 10, 0, 1, 0, 1, Boundary::Periodic, Boundary::Wall, Boundary::Wall, Boundary::Wall),
               ConfigError);
  const auto g = square(9, Boundary::DirichletExact);
  EXPECT_THROW(Solver2D(g, kIdeal, Potential::constant(), SchemeConfig{}), ConfigError);
  EXPECT_TRUE(g.dirichlet_node(0, 3));
  EXPECT_FALSE(g.dirichlet_node(3, 3));
}

TEST(Solver2D, ExactBoundaryNodesFollowExactSolution) {
  const auto setup = build_2d(find_case("mms2d"));
  auto solver = make_solver(setup);
  auto q = setup.q0;
  const double dt = solver.max_dt(q);
  solver.step(q, 0.0, dt);
  const auto& g = setup.grid;
  for (int k = 0; k < g.nx; ++k) {
    const auto e = setup.exact(g.x(k), g.y(0), dt);
    const auto v = cons_to_prim(q[g.index(k, 0)], setup.eos);
    EXPECT_NEAR(v.rho, e.rho, 1e-13);
    EXPECT_NEAR(v.p, e.p, 1e-12);
  }
}
