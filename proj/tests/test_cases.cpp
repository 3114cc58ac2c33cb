#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "wbfv/cases.hpp"

using namespace wbfv;

TEST(Registry, EveryCaseBuilds) {
  std::set<std::string> names;
  for (const auto& c : case_registry()) {
    EXPECT_TRUE(names.insert(c.name).second) << "duplicate " << c.name;
    EXPECT_FALSE(c.summary.empty());
    if (c.dim == 1) {
      const auto s = build_1d(c);
      EXPECT_EQ(s.q0.size(), static_cast<std::size_t>(c.nx)) << c.name;
      EXPECT_EQ(s.background.size(), s.q0.size());
      EXPECT_NO_THROW(to_primitive(s.q0, s.eos)) << c.name;
    } else {
      const auto s = build_2d(c);
      EXPECT_EQ(s.q0.size(), static_cast<std::size_t>(c.nx) * c.ny) << c.name;
      EXPECT_NO_THROW(to_primitive(s.q0, s.eos)) << c.name;
    }
  }
  EXPECT_EQ(names.size(), 17u);
  EXPECT_THROW(find_case("nope"), ConfigError);
}

TEST(Registry, ListingHasOneLinePerCase) {
  const auto text = list_cases_text();
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), case_registry().size());
  EXPECT_NE(text.find("rising_bubble"), std::string::npos);
}

TEST(Cases, ManufacturedSolutionAtOrigin) {
  const auto e = mms_exact(Potential::linear(1.0, 1.0), 1.0, 1.0, 4.5)(0.0, 0.0, 0.0);
  EXPECT_DOUBLE_EQ(e.rho, 1.0);
  EXPECT_DOUBLE_EQ(e.p, 4.5 + 0.2 / std::numbers::pi);
}

TEST(Cases, RayleighTaylorCorePressure) {
  const auto s = build_2d(find_case("radial_rt"));
  const auto& g = s.grid;
  // node (78, 60) sits at (0.3, 0), inside the core
  const auto v = cons_to_prim(s.q0[g.index(78, 60)], s.eos);
  EXPECT_NEAR(g.x(78), 0.3, 1e-14);
  EXPECT_NEAR(v.p, std::exp(-0.3), 1e-13);
  EXPECT_NEAR(v.rho, std::exp(-0.3), 1e-13);
}

TEST(Cases, IsothermalInitialData) {
  const auto s = build_1d(find_case("isothermal_wb"));
  const auto v = to_primitive(s.q0, s.eos);
  for (int i = 0; i < s.grid.n; ++i) EXPECT_NEAR(v[static_cast<std::size_t>(i)].p, std::exp(-s.grid.x(i)), 1e-15);
}

TEST(Cases, PulseCellAverage) {
  // a pulse much wider than a cell: the average is close to the point value
  EXPECT_NEAR(detail::gaussian_cell_average(0.5, 1e-3, 0.5, 100.0), 1.0, 1e-5);
  // unit integral check for a narrow pulse spread over one wide cell
  EXPECT_NEAR(detail::gaussian_cell_average(0.0, 10.0, 0.0, 100.0), std::sqrt(std::numbers::pi / 100.0) / 10.0, 1e-15);
}

TEST(Norms, ConstantError) {
  const auto n = norms_of({1.0, -1.0, 1.0}, {1.0, 0.5, 0.25});
  EXPECT_DOUBLE_EQ(n.l1, 1.0);
  EXPECT_DOUBLE_EQ(n.l2, 1.0);
  EXPECT_DOUBLE_EQ(n.linf, 1.0);
  EXPECT_THROW(norms_of({1.0}, {1.0, 1.0}), ConfigError);
  EXPECT_THROW(n.get("l3"), ConfigError);
}

TEST(Norms, ZeroWeightsSkipped) {
  const auto n = norms_of({1.0, 100.0}, {1.0, 0.0});
  EXPECT_EQ(n.linf, 1.0);
  EXPECT_EQ(n.l1, 1.0);
}

TEST(Norms, RefinementInvariantOnWallGrids) {
  // Trapezoid weights integrate linear fields exactly: L1 of x over [0,1]^2 is 1/2 on any grid.
  for (int n : {5, 11, 50}) {
    const Grid2D g(n, n, 0.0, 1.0, 0.0, 1.0, Boundary::Wall, Boundary::Wall, Boundary::Wall, Boundary::Wall);
    std::vector<double> e(g.size());
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) e[g.index(i, j)] = g.x(i);
    EXPECT_NEAR(norms_of(e, norm_weights(g)).l1, 0.5, 1e-14) << n;
    Solver2D::State q(g.size(), Cons<2>{1.0, {0.0, 0.0}, 1.0});
    EXPECT_NEAR(total_mass(q, g), 1.0, 1e-14);
  }
  // Periodic duplicates do not count twice.
  const Grid2D p(9, 9, 0.0, 1.0, 0.0, 1.0, Boundary::Periodic, Boundary::Periodic, Boundary::Periodic, Boundary::Periodic);
  Solver2D::State q(p.size(), Cons<2>{1.0, {0.0, 0.0}, 1.0});
  EXPECT_NEAR(total_mass(q, p), 1.0, 1e-14);
}

TEST(Convergence, Rates) {
  const auto r = convergence_table({100, 200}, {0.01, 0.005}, {4e-4, 1e-4});
  ASSERT_TRUE(r[1].rate.has_value());
  EXPECT_NEAR(*r[1].rate, 2.0, 1e-14);
  EXPECT_FALSE(r[0].rate.has_value());
  EXPECT_NEAR(*convergence_table({1, 2}, {0.1, 0.05}, {3e-3, 3e-3})[1].rate, 0.0, 0.0);
  EXPECT_FALSE(convergence_table({1, 2}, {0.1, 0.05}, {0.0, 1e-3})[1].rate.has_value());
  EXPECT_FALSE(convergence_table({1, 2}, {0.1, 0.05}, {1e-3, 0.0})[1].rate.has_value());
  EXPECT_THROW(convergence_table({1}, {0.1}, {1.0}), ConfigError);
}

TEST(ErrorNorms, PerVariable) {
  std::vector<Prim<1>> a{{1.0, {0.0}, 1.0}, {1.0, {0.0}, 1.0}}, b{{1.5, {0.0}, 1.0}, {0.5, {1.0}, 1.0}};
  const auto n = error_norms<1>(a, b, {1.0, 1.0});
  ASSERT_EQ(n.size(), 3u);
  EXPECT_EQ(n[0].variable, "rho");
  EXPECT_DOUBLE_EQ(n[0].norms.l1, 0.5);
  EXPECT_DOUBLE_EQ(n[1].norms.l1, 0.5);
  EXPECT_DOUBLE_EQ(n[1].norms.linf, 1.0);
  EXPECT_EQ(n[2].norms.linf, 0.0);
}

TEST(Settings, RoundTripEveryCase) {
  for (const auto& c : case_registry()) {
    CaseSpec fresh = find_case(c.name);
    for (const auto& [k, v] : settings_of(c)) apply_setting(fresh, k, v);
    EXPECT_EQ(settings_of(fresh), settings_of(c)) << c.name;
  }
}

TEST(Settings, Errors) {
  CaseSpec s = find_case("sod_gravity");
  EXPECT_THROW(apply_setting(s, "bogus", "1"), ConfigError);
  EXPECT_THROW(apply_setting(s, "cfl", "2"), ConfigError);
  EXPECT_THROW(apply_setting(s, "kappa", "3"), ConfigError);
  EXPECT_THROW(apply_setting(s, "nx", "abc"), ConfigError);
  EXPECT_THROW(apply_setting(s, "case", "mms2d"), ConfigError);
  EXPECT_THROW(apply_setting(s, "flux", "roe"), ConfigError);
  apply_setting(s, "rho_r", "0.2");
  EXPECT_EQ(s.constant("rho_r"), 0.2);
  EXPECT_THROW(s.constant("missing"), ConfigError);
}

TEST(Diagnostics, PotentialTemperatureAndCentroid) {
  const Eos e(IdealGas{287.0, 1.4});
  EXPECT_NEAR(potential_temperature(e, 1.0, 287.0 * 300.0, 287.0 * 300.0), 300.0, 1e-12);
  const Grid2D g(11, 11, 0.0, 1.0, 0.0, 1.0, Boundary::Wall, Boundary::Wall, Boundary::Wall, Boundary::Wall);
  std::vector<double> f(g.size(), -1.0);
  f[g.index(3, 7)] = 2.0;
  const auto c = positive_centroid(g, f);
  EXPECT_DOUBLE_EQ(c[0], 0.3);
  EXPECT_DOUBLE_EQ(c[1], 0.7);
  EXPECT_TRUE(std::isnan(positive_centroid(g, std::vector<double>(g.size(), 0.0))[0]));
}
