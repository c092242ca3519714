// Copyright 2026 The vinesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "csv.h"
#include "gtest/gtest.h"
#include "nlohmann/json.hpp"
#include "vinesim/growsim.h"
#include "vinesim/material.h"
#include "vinesim/scenario.h"

namespace vinesim::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "vinesim");
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           ("vinesim_cli_" + std::string(::testing::UnitTest::GetInstance()
                                             ->current_test_info()
                                             ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string Read(const std::string& name) {
    std::ifstream f(dir_ / name);
    return {std::istreambuf_iterator<char>(f), {}};
  }
  std::string Out() const { return (dir_ / "out").string(); }
  std::string ReadOut(const std::string& name) { return Read("out/" + name); }

  fs::path dir_;
};

TEST_F(CliTest, FitStressStrainRoundTrip) {
  SkinMaterial m;
  m.axial_modulus_soft = 2e6;
  m.axial_modulus_taut = 800e6;
  m.wrinkle_strain = 1.2;
  std::string csv = "strain,stress_pa,direction\n";
  for (int i = 1; i <= 30; ++i) {
    const double e = 0.05 * i;
    csv += FormatDouble(e) + "," + FormatDouble(AxialStressUnchecked(m, e)) +
           ",longitudinal\n";
  }
  for (int i = 1; i <= 5; ++i) {
    const double e = 0.001 * i;
    csv += FormatDouble(e) + "," + FormatDouble(879.1e6 * e) + ",transverse\n";
  }
  const std::string in = Write("ss.csv", csv);
  const Result r = Cli({"--out", Out(), "fit", "--kind", "stress_strain", in});
  ASSERT_EQ(r.code, 0) << r.err;
  const json card = json::parse(ReadOut("stress_strain_card.json"));
  EXPECT_NEAR(card["parameters"]["axial_modulus_soft_mpa"].get<double>(), 2.0, 2e-9);
  EXPECT_NEAR(card["parameters"]["axial_modulus_taut_mpa"].get<double>(), 800.0, 8e-7);
  EXPECT_NEAR(card["parameters"]["wrinkle_strain"].get<double>(), 1.2, 1.2e-9);
  EXPECT_FALSE(card["single_regime"].get<bool>());
  EXPECT_NEAR(card["anisotropy_ratio"].get<double>(), 879.1 / 2.0, 1e-6);
  EXPECT_TRUE(card["anisotropy_check"]["passes"].get<bool>());
}

TEST_F(CliTest, FitToStdoutWithoutOut) {
  const std::string in = Write("c.csv", "angle_rad,force_n\n0,2\n1,2.6997176\n2,3.6442376\n");
  const Result r = Cli({"fit", "--kind", "capstan", in});
  ASSERT_EQ(r.code, 0) << r.err;
  const json card = json::parse(r.out);
  EXPECT_EQ(card["kind"], "capstan");
  EXPECT_NEAR(card["parameters"]["mu"].get<double>(), 0.3, 1e-6);
  EXPECT_NEAR(card["parameters"]["k_n"].get<double>(), 2.0, 1e-6);
}

TEST_F(CliTest, CapstanZeroForceRowIsNamed) {
  const std::string in = Write("c.csv", "angle_rad,force_n\n0,2\n1,0\n2,3.6\n");
  const Result r = Cli({"fit", "--kind", "capstan", in});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("row 2"), std::string::npos) << r.err;
}

TEST_F(CliTest, WrongHeaderIsInputError) {
  const std::string in = Write("c.csv", "angle,force\n0,2\n");
  const Result r = Cli({"fit", "--kind", "capstan", in});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("line 1"), std::string::npos);
}

TEST_F(CliTest, PrestretchFiveSpecimens) {
  const double xs[] = {0.5, 1.0, 1.5, 2.0, 2.5};
  const double noise[] = {0.01, -0.02, 0.0, 0.02, -0.01};
  std::string csv = "prestretch,extension\n";
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < 5; ++i) {
    const double y = 0.6 * xs[i] + noise[i];
    csv += FormatDouble(xs[i]) + "," + FormatDouble(y) + "\n";
    sx += xs[i];
    sy += y;
    sxx += xs[i] * xs[i];
    sxy += xs[i] * y;
  }
  const double slope = (5 * sxy - sx * sy) / (5 * sxx - sx * sx);
  const Result r =
      Cli({"--out", Out(), "fit", "--kind", "prestretch", Write("p.csv", csv)});
  ASSERT_EQ(r.code, 0) << r.err;
  const json card = json::parse(ReadOut("prestretch_card.json"));
  EXPECT_NEAR(card["parameters"]["prestretch_coeff"].get<double>(), slope, 1e-12);
  EXPECT_EQ(card["samples"], 5);
}

TEST_F(CliTest, SweepDefaultReportsMinRadiusAndRatio) {
  const Result r = Cli({"--out", Out(), "sweep", "--range", "0:60:5"});
  ASSERT_EQ(r.code, 0) << r.err;
  absl::StatusOr<CsvTable> t = ParseCsv(ReadOut("sweep.csv"));
  ASSERT_TRUE(t.ok());
  EXPECT_EQ(t->header, (std::vector<std::string>{"pressure_kpa", "strain", "theta_rad",
                                                 "R_mm", "curvature_per_m",
                                                 "wall_tension_n"}));
  ASSERT_EQ(t->rows.size(), 13u);
  double prev = -1.0;
  for (const auto& row : t->rows) {
    const double k = *ParseDouble(row[4]);
    EXPECT_GE(k, prev);
    prev = k;
  }
  const json summary = json::parse(ReadOut("summary.json"));
  EXPECT_LE(summary["min_R_mm"].get<double>(), 52.0);
  EXPECT_GE(summary["curvature_ratio"].get<double>(), 3.0);
  EXPECT_NE(ReadOut("sweep.svg").find("<svg"), std::string::npos);
}

TEST_F(CliTest, SweepReportLinesGoToStderr) {
  const Result r = Cli({"sweep", "--range", "0:60:5"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("pressure_kpa,strain", 0), 0u);
  EXPECT_NE(r.err.find("min R: "), std::string::npos);
  EXPECT_NE(r.err.find("lengthening/fPAM curvature ratio: "), std::string::npos);
}

TEST_F(CliTest, SweepSinglePointAtZero) {
  const Result r = Cli({"sweep", "--range", "0:0:0"});
  ASSERT_EQ(r.code, 0) << r.err;
  absl::StatusOr<CsvTable> t = ParseCsv(r.out);
  ASSERT_TRUE(t.ok());
  ASSERT_EQ(t->rows.size(), 1u);
  EXPECT_EQ(*ParseDouble(t->rows[0][0]), 0.0);
  EXPECT_EQ(*ParseDouble(t->rows[0][4]), 0.0);
}

TEST_F(CliTest, SweepBadRangeIsInputError) {
  EXPECT_EQ(Cli({"sweep", "--range", "10:0:5"}).code, kExitInputError);
  EXPECT_EQ(Cli({"sweep", "--range", "abc"}).code, kExitInputError);
  EXPECT_EQ(Cli({"sweep", "--mode", "twist"}).code, kExitInputError);
}

TEST_F(CliTest, SweepJsonl) {
  const Result r = Cli({"--format", "jsonl", "sweep", "--range", "0:10:5"});
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    const json row = json::parse(line);
    EXPECT_TRUE(row.contains("curvature_per_m"));
    ++n;
  }
  EXPECT_EQ(n, 3);
}

TEST_F(CliTest, SimulateBundledScenarios) {
  for (const std::string name : {"gap", "push", "s_curve"}) {
    const std::string out = (dir_ / name).string();
    const Result r = Cli({"--out", out, "simulate", name});
    ASSERT_EQ(r.code, 0) << name << ": " << r.err;
    const std::string events = Read(name + "/events.csv");
    const Scenario sc = *LoadBundledScenario(name);
    const SimContext ctx = *MakeSimContext(sc.robot, sc.env, sc.config);
    SimState s = *InitialState(ctx);
    for (const Command& c : sc.script) s = *Step(ctx, s, c);
    EXPECT_EQ(events, FormatEventLog(s.events));
    const json result = json::parse(Read(name + "/result.json"));
    EXPECT_TRUE(result["all_targets_reached"].get<bool>());
  }
  EXPECT_NE(Read("gap/events.csv").find("gap-passed"), std::string::npos);
  EXPECT_NE(Read("push/events.csv").find("mass-pushed"), std::string::npos);
}

TEST_F(CliTest, SimulateUnreachedTargetExits3) {
  json sc = {{"robot", {{"segments", {{{"length_mm", 100}}}}}},
             {"environment", {{"targets", {{500, 0}}}}},
             {"script", {{{"type", "SetPressure"}, {"kpa", 20}}, {{"type", "Grow"}, {"mm", 50}}}}};
  const Result r = Cli({"simulate", Write("far.json", sc.dump())});
  EXPECT_EQ(r.code, kExitNoPlan);
  EXPECT_EQ(Cli({"simulate", "no_such_scenario"}).code, kExitInputError);
  EXPECT_EQ(Cli({"simulate", Write("bad.json", "{nope")}).code, kExitInputError);
}

TEST_F(CliTest, PlanExitCodes) {
  const Result straight = Cli({"plan", "--target", "301.6,0", "--grid", "0:60:5"});
  ASSERT_EQ(straight.code, 0) << straight.err;
  const json p = json::parse(straight.out);
  EXPECT_EQ(p["assignment"], json::array({"none", "none"}));

  const Result s_curve =
      Cli({"--out", Out(), "plan", "s_curve", "--target", "179.07,270.04"});
  ASSERT_EQ(s_curve.code, 0) << s_curve.err;
  const json sp = json::parse(ReadOut("plan.json"));
  EXPECT_EQ(sp["assignment"], json::array({"left", "right"}));
  absl::StatusOr<CsvTable> frontier = ParseCsv(ReadOut("frontier.csv"));
  ASSERT_TRUE(frontier.ok());
  EXPECT_EQ(frontier->header[0], "assignment");
  EXPECT_EQ(frontier->rows.size(), 9u * 61u);

  EXPECT_EQ(Cli({"plan", "--target", "5000,0"}).code, kExitNoPlan);
  EXPECT_EQ(Cli({"plan", "gap", "--target", "5000,0"}).code, kExitInputError);
  EXPECT_EQ(Cli({"plan", "--target", "oops"}).code, kExitInputError);
}

TEST_F(CliTest, SeedIsAcceptedAndInert) {
  const Result a = Cli({"--seed", "1", "sweep", "--range", "0:20:10"});
  const Result b = Cli({"--seed", "99", "sweep", "--range", "0:20:10"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, UsageErrorsExit2) {
  EXPECT_EQ(Cli({}).code, kExitInputError);
  EXPECT_EQ(Cli({"bogus"}).code, kExitInputError);
  EXPECT_EQ(Cli({"--format", "xml", "sweep"}).code, kExitInputError);
}

TEST(ExitCodeTest, Mapping) {
  EXPECT_EQ(ExitCodeFor(absl::OkStatus()), kExitOk);
  EXPECT_EQ(ExitCodeFor(absl::InvalidArgumentError("x")), kExitInputError);
  EXPECT_EQ(ExitCodeFor(absl::InternalError("x")), kExitSolverFailure);
}

TEST(CsvTest, DoublesRoundTripBitExactly) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<uint64_t> bits;
  for (int i = 0; i < 5000; ++i) {
    const uint64_t b = bits(rng);
    double v;
    std::memcpy(&v, &b, sizeof v);
    if (std::isnan(v)) continue;
    absl::StatusOr<double> back = ParseDouble(FormatDouble(v));
    ASSERT_TRUE(back.ok()) << FormatDouble(v);
    EXPECT_EQ(std::memcmp(&v, &*back, sizeof v), 0) << FormatDouble(v);
  }
  EXPECT_EQ(*ParseDouble(FormatDouble(INFINITY)), INFINITY);
  EXPECT_TRUE(std::isnan(*ParseDouble(FormatDouble(NAN))));
}

TEST_F(CliTest, EmittedCsvRoundTrips) {
  ASSERT_EQ(Cli({"--out", Out(), "sweep", "--range", "0:60:2.5"}).code, 0);
  ASSERT_EQ(Cli({"--out", Out(), "simulate", "s_curve"}).code, 0);
  ASSERT_EQ(Cli({"--out", Out(), "plan", "s_curve", "--target", "179.07,270.04"}).code, 0);
  for (const std::string name : {"sweep.csv", "snapshots.csv", "events.csv", "frontier.csv"}) {
    const std::string text = ReadOut(name);
    absl::StatusOr<CsvTable> t = ParseCsv(text);
    ASSERT_TRUE(t.ok()) << name;
    std::string rebuilt = FormatCsvRow(t->header);
    for (const auto& row : t->rows) {
      std::vector<std::string> fields;
      for (const std::string& f : row) {
        absl::StatusOr<double> v = ParseDouble(f);
        fields.push_back(v.ok() ? FormatDouble(*v) : f);
      }
      rebuilt += FormatCsvRow(fields);
    }
    EXPECT_EQ(rebuilt, text) << name;
  }
}

}  // namespace
}  // namespace vinesim::cli
