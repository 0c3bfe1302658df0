#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "bgctl/report.hpp"

using namespace bgctl;
constexpr double kPi = std::numbers::pi;

TEST(Report, FormatNumberRoundTrips) {
  for (double v : {0.0, 1.0, -2.5, kPi, 1e-300, 6.02214076e23, 0.1 + 0.2}) {
    const std::string s = format_number(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, v) << s;
  }
  EXPECT_EQ(format_number(0.5), "0.5");
}

TEST(Report, ProvenanceCarriesVersionAndParameters) {
  const auto j = provenance("eigs", {{"n", 3}});
  EXPECT_EQ(j["tool"], "bgctl");
  EXPECT_EQ(j["version"], version());
  EXPECT_EQ(j["command"], "eigs");
  EXPECT_EQ(j["parameters"]["n"], 3);
}

TEST(Report, CsvHeader) {
  std::ostringstream os;
  write_csv_header(os, "sweep", {{"a", 0.5}, {"t", "0.4:1:0.1"}});
  EXPECT_EQ(os.str(), std::string("# bgctl ") + version() + " sweep\n# a=0.5\n# t=\"0.4:1:0.1\"\n");
}

TEST(Report, ControlPlanFields) {
  const auto plan = synthesize(SpectralField::single_mode(1, 1, 4), Crown::make(kPi / 3, kPi / 2), 1.0, 4);
  const auto j = to_json(plan);
  for (const char* k : {"n", "T", "crown", "lambdas", "alphas", "dual_coeffs", "cost", "terminal_residual"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["crown"]["a"], kPi / 3);
  EXPECT_EQ(j["dual_coeffs"].size(), 4u);
  EXPECT_EQ(j["dual_coeffs"][0].size(), 4u);
  EXPECT_EQ(j["lambdas"][1], 5.0);
}

TEST(Report, DeterministicJsonAndCsv) {
  auto run = [] {
    const auto rep = sweep_minimal_time(kPi / 3, {0.8, 1.0}, 4, 5);
    std::ostringstream os;
    write_sweep_rows(os, rep);
    return os.str() + to_json(rep).dump();
  };
  EXPECT_EQ(run(), run());
}

TEST(Report, MassBoundRows) {
  std::ostringstream os;
  const auto r = verify_mass_bound({1, 1}, 0.0);
  write_mass_bound_rows(os, {r});
  EXPECT_EQ(os.str(), "ell,n,a,lhs,rhs,holds\n1,1,0," + format_number(r.lhs) + ",0.1875,true\n");
}

TEST(Report, CarlemanAuditJson) {
  CarlemanAudit a;
  build_carleman_weight(0.6, &a);
  const auto j = to_json(a);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["grid_points"], 10000);
}
