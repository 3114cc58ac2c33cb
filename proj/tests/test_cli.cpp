#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "wbfv/cli.hpp"

using namespace wbfv;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("wbfv_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(Ini, SectionsAndComments) {
  std::istringstream in(
      "# header\n"
      "case = sod_gravity\n"
      "[run]\n"
      "nx = 50   ; trailing\n"
      "[eos]\n"
      "gamma = 1.3\n"
      "\n"
      "[bc]\n"
      "left = periodic\n");
  const auto s = parse_ini(in);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s[0], (std::pair<std::string, std::string>{"case", "sod_gravity"}));
  EXPECT_EQ(s[1], (std::pair<std::string, std::string>{"nx", "50"}));
  EXPECT_EQ(s[2], (std::pair<std::string, std::string>{"eos.gamma", "1.3"}));
  EXPECT_EQ(s[3], (std::pair<std::string, std::string>{"bc.left", "periodic"}));
}

TEST(Ini, Malformed) {
  std::istringstream a("[eos\n");
  EXPECT_THROW(parse_ini(a), ConfigError);
  std::istringstream b("just words\n");
  EXPECT_THROW(parse_ini(b), ConfigError);
  EXPECT_THROW(read_ini("/nonexistent/file.ini"), ConfigError);
}

TEST(Resolve, NeedsKnownCaseAndKeys) {
  EXPECT_THROW(resolve_case({}), ConfigError);
  EXPECT_THROW(resolve_case({{"case", "nope"}}), ConfigError);
  EXPECT_THROW(resolve_case({{"case", "sod_gravity"}, {"bogus", "1"}}), ConfigError);
  const auto s = resolve_case({{"case", "sod_gravity"}, {"nx", "64"}, {"scheme", "nwb"}});
  EXPECT_EQ(s.nx, 64);
  EXPECT_EQ(s.scheme, SourceKind::CentralDifference);
}

TEST(Resolve, ConfigTextRoundTripIsByteIdentical) {
  for (const auto& c : case_registry()) {
    const std::string text = resolved_config_text(c);
    std::istringstream in(text);
    const auto again = resolved_config_text(resolve_case(parse_ini(in)));
    EXPECT_EQ(again, text) << c.name;
  }
}

TEST(Run, DeterministicOutputs) {
  auto spec = resolve_case({{"case", "isothermal_pert"}, {"nx", "40"}, {"tfinal", "0.05"}, {"every", "5"}});
  const auto a = scratch("det_a"), b = scratch("det_b");
  const auto ra = run_case(spec, a);
  const auto rb = run_case(spec, b);
  ASSERT_EQ(ra.size(), 1u);
  EXPECT_EQ(ra[0].steps, rb[0].steps);
  for (const char* f : {"norms.csv", "timeseries.csv", "resolved_config.ini"}) {
    ASSERT_TRUE(fs::exists(a / f)) << f;
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
  EXPECT_LE(ra[0].mass_drift, 1.0);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Run, ConvergenceTableForSeveralGrids) {
  auto spec = resolve_case({{"case", "isothermal_wb"}, {"grids", "20,40"}, {"tfinal", "0.01"}});
  const auto out = scratch("conv");
  const auto r = run_case(spec, out);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_TRUE(fs::exists(out / "grid_20" / "timeseries.csv"));
  const auto conv = slurp(out / "convergence.csv");
  EXPECT_EQ(conv.rfind("cells,variable,norm,error,rate\n", 0), 0u);
  for (const auto& g : r)
    for (const auto& vn : g.norms) EXPECT_LE(vn.norms.l1, 1e-12);
  fs::remove_all(out);
}

TEST(Equilibrium, CsvLayout) {
  EquilibriumConfig c;
  apply_equilibrium_setting(c, "nodes", "11");
  apply_equilibrium_setting(c, "potential", "linear");
  const auto h = compute_equilibrium(c);
  std::ostringstream out;
  write_equilibrium_csv(out, c, h);
  std::istringstream in(out.str());
  std::string line;
  int comments = 0, rows = 0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) {
      ++comments;
    } else if (!header) {
      EXPECT_EQ(line, "x,rho,p,T");
      header = true;
    } else {
      EXPECT_EQ(std::count(line.begin(), line.end(), ','), 3);
      ++rows;
    }
  }
  EXPECT_GE(comments, 1);
  EXPECT_EQ(rows, 11);
  EXPECT_NE(out.str().find("provenance"), std::string::npos);
  EXPECT_NEAR(h.p.back(), std::exp(-1.0), 1e-13);
}

TEST(Equilibrium, ReferenceAndSettingErrors) {
  EquilibriumConfig c;
  apply_equilibrium_setting(c, "eos.variant", "vdw");
  apply_equilibrium_setting(c, "eos.a", "0.4");
  apply_equilibrium_setting(c, "eos.b", "0.001");
  apply_equilibrium_setting(c, "method", "reference");
  apply_equilibrium_setting(c, "anchor.kind", "density");
  const auto h = compute_equilibrium(c);
  EXPECT_EQ(h.provenance, Provenance::OdeReference);
  EXPECT_DOUBLE_EQ(h.rho.front(), 1.0);
  EXPECT_THROW(apply_equilibrium_setting(c, "bogus", "1"), ConfigError);
  EXPECT_THROW(apply_equilibrium_setting(c, "method", "magic"), ConfigError);
  EXPECT_THROW(apply_equilibrium_setting(c, "profile", "adiabatic"), ConfigError);
  apply_equilibrium_setting(c, "anchor.index", "500");
  EXPECT_THROW(compute_equilibrium(c), ConfigError);
}
