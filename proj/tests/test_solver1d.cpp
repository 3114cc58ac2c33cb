#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "wbfv/cases.hpp"
#include "wbfv/solver1d.hpp"

using namespace wbfv;

namespace {

CaseSpec spec_with(const std::string& name, std::vector<std::pair<std::string, std::string>> kv) {
  CaseSpec s = find_case(name);
  for (const auto& [k, v] : kv) apply_setting(s, k, v);
  return s;
}

double max_abs_rhs(Solver1D& solver, const Solver1D::State& q) {
  double m = 0.0;
  for (const auto& c : solver.rhs(q))
    for (int k = 0; k < Cons<1>::size; ++k) m = std::max(m, std::abs(c[k]));
  return m;
}

void advance(Solver1D& solver, Solver1D::State& q, int steps) {
  double t = 0.0;
  for (int s = 0; s < steps; ++s) {
    const double dt = solver.max_dt(q);
    solver.step(q, t, dt);
    t += dt;
  }
}

double max_velocity(const Solver1D::State& q) {
  double m = 0.0;
  for (const auto& c : q) m = std::max(m, std::abs(c.mom[0] / c.rho));
  return m;
}

}  // namespace

TEST(Solver1D, IsothermalEquilibriumPreservedForEveryPotential) {
  for (const char* pot : {"linear", "quadratic", "sine"}) {
    for (const char* bc : {"transmissive", "wall"}) {
      const auto setup = build_1d(spec_with("isothermal_wb", {{"potential", pot}, {"bc.left", bc}, {"bc.right", bc}}));
      auto solver = make_solver(setup);
      EXPECT_LE(max_abs_rhs(solver, setup.q0), 1e-12) << pot << " " << bc;
      auto q = setup.q0;
      advance(solver, q, 50);
      EXPECT_LE(max_velocity(q), 1e-12) << pot << " " << bc;
      for (std::size_t i = 0; i < q.size(); ++i) EXPECT_NEAR(q[i].rho, setup.q0[i].rho, 1e-12);
    }
  }
}

TEST(Solver1D, DiscreteEquilibriaPreserved) {
  for (const char* name : {"polytropic", "vdw_hydro"}) {
    const auto setup = build_1d(spec_with(name, {{"variant", "discrete"}}));
    auto solver = make_solver(setup);
    EXPECT_LE(max_abs_rhs(solver, setup.q0), 1e-12) << name;
  }
}

TEST(Solver1D, ComparatorDriftsOnPolytrope) {
  const auto setup = build_1d(spec_with("polytropic", {{"scheme", "nwb"}, {"variant", "exact"}}));
  auto solver = make_solver(setup);
  auto q = setup.q0;
  advance(solver, q, 100);
  EXPECT_GE(max_velocity(q), 1e-6);
}

TEST(Solver1D, MassConservedBetweenWalls) {
  for (const char* scheme : {"wb", "nwb"}) {
    const auto setup = build_1d(spec_with("sod_gravity", {{"scheme", scheme}}));
    auto solver = make_solver(setup);
    auto q = setup.q0;
    const double m0 = total_mass(q, setup.grid);
    advance(solver, q, 100);
    EXPECT_LE(std::abs(total_mass(q, setup.grid) - m0) / m0, 1e-12) << scheme;
    for (const auto& c : q) EXPECT_GT(c.rho, 0.0);
  }
}

TEST(Solver1D, UniformPeriodicFlowUnchanged) {
  const Eos eos(IdealGas{});
  Solver1D solver(Grid1D(32, 0.0, 1.0, Boundary::Periodic, Boundary::Periodic), eos, Potential::constant(), SchemeConfig{});
  Solver1D::State q(32, prim_to_cons(Prim<1>{1.3, {0.7}, 2.0}, eos));
  const auto q0 = q;
  advance(solver, q, 40);
  for (std::size_t i = 0; i < q.size(); ++i)
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(q[i][k], q0[i][k], 1e-13);
}

TEST(Solver1D, PeriodicGhostsWrap) {
  const Eos eos(IdealGas{});
  Solver1D solver(Grid1D(8, 0.0, 1.0, Boundary::Periodic, Boundary::Periodic), eos, Potential::sine(0.1, 1.0),
                  SchemeConfig{});
  Solver1D::State q;
  for (int i = 0; i < 8; ++i) q.push_back(prim_to_cons(Prim<1>{1.0 + i, {0.1 * i}, 1.0}, eos));
  solver.load(q);
  solver.fill_ghosts();
  const auto& w = solver.line();
  EXPECT_EQ(w.v[0].rho, 7.0);  // ghost -2 holds cell 6
  EXPECT_EQ(w.v[1].rho, 8.0);  // ghost -1 holds cell 7
  EXPECT_EQ(w.v[10].rho, 1.0);
  EXPECT_EQ(w.v[11].rho, 2.0);
  EXPECT_EQ(w.phi[1], w.phi[9]);
}

TEST(Solver1D, WallGhostsMirror) {
  const Eos eos(IdealGas{});
  SchemeConfig nwb;
  nwb.source = SourceKind::CentralDifference;
  Solver1D solver(Grid1D(8, 0.0, 1.0, Boundary::Wall, Boundary::Wall), eos, Potential::linear(), nwb);
  Solver1D::State q;
  for (int i = 0; i < 8; ++i) q.push_back(prim_to_cons(Prim<1>{1.0 + i, {0.5}, 1.0 + i}, eos));
  solver.load(q);
  solver.fill_ghosts();
  const auto& w = solver.line();
  EXPECT_EQ(w.v[1].rho, 1.0);
  EXPECT_EQ(w.v[1].vel[0], -0.5);
  EXPECT_EQ(w.v[0].rho, 2.0);
  EXPECT_EQ(w.v[10].rho, 8.0);
  EXPECT_EQ(w.v[11].rho, 7.0);
}

TEST(Solver1D, WellBalancedTransmissiveGhostsAreHydrostatic) {
  const Eos eos(IdealGas{});
  Solver1D solver(Grid1D(10, 0.0, 1.0, Boundary::Transmissive, Boundary::Transmissive), eos, Potential::linear(),
                  SchemeConfig{});
  Solver1D::State q;
  for (int i = 0; i < 10; ++i) q.push_back(prim_to_cons(Prim<1>{2.0, {0.0}, 2.0}, eos));
  solver.load(q);
  solver.fill_ghosts();
  const auto& w = solver.line();
  // theta = 1, so the ghost one cell out is scaled by exp(dx)
  EXPECT_NEAR(w.v[1].p, 2.0 * std::exp(0.1), 1e-14);
  EXPECT_NEAR(w.v[0].p, 2.0 * std::exp(0.2), 1e-14);
  EXPECT_NEAR(w.v[12].p, 2.0 * std::exp(-0.1), 1e-14);
}

TEST(Solver1D, TimeStepFromCfl) {
  const Eos eos(IdealGas{});
  SchemeConfig cfg;
  cfg.cfl = 0.5;
  Solver1D solver(Grid1D(10, 0.0, 1.0, Boundary::Wall, Boundary::Wall), eos, Potential::constant(), cfg);
  Solver1D::State q(10, prim_to_cons(Prim<1>{1.0, {0.0}, 1.0}, eos));
  q[3] = prim_to_cons(Prim<1>{1.0, {2.0}, 1.0}, eos);
  EXPECT_NEAR(solver.max_dt(q), 0.5 * 0.1 / (2.0 + std::sqrt(1.4)), 1e-15);
}

TEST(Solver1D, SodRunsToFinalTime) {
  const auto setup = build_1d(find_case("sod_gravity"));
  auto solver = make_solver(setup);
  auto q = setup.q0;
  RunControl<1> rc;
  rc.t_final = 0.2;
  const auto st = integrate(solver, q, 0.0, rc);
  EXPECT_DOUBLE_EQ(st.t, 0.2);
  EXPECT_GT(st.steps, 10);
  for (const auto& c : to_primitive(q, setup.eos)) {
    EXPECT_TRUE(std::isfinite(c.p));
    EXPECT_GT(c.p, 0.0);
  }
}

TEST(Grid1D, Validation) {
  EXPECT_THROW(Grid1D(2, 0.0, 1.0, Boundary::Wall, Boundary::Wall), ConfigError);
  EXPECT_THROW(Grid1D(10, 1.0, 0.0, Boundary::Wall, Boundary::Wall), ConfigError);
  EXPECT_THROW(Grid1D(10, 0.0, 1.0, Boundary::Periodic, Boundary::Wall), ConfigError);
  const Grid1D g(4, 0.0, 1.0, Boundary::Wall, Boundary::Wall);
  EXPECT_DOUBLE_EQ(g.x(0), 0.125);
  EXPECT_DOUBLE_EQ(g.x(-1), -0.125);
}
