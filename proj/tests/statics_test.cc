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

#include "vinesim/statics.h"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "oracles.h"
#include "vinesim/material.h"

namespace vinesim {
namespace {

constexpr double kPi = std::numbers::pi;

RobotSpec Spec(double length = 0.100) {
  RobotSpec s = DefaultRobotSpec(1);
  s.segments[0].rest_length = length;
  return *ValidateSpec(s);
}

TEST(ElongationTest, ZeroPressure) { EXPECT_EQ(*ElongationStrain(Spec(), 0.0), 0.0); }

TEST(ElongationTest, FortyKpaDoublesLength) {
  const RobotSpec s = Spec();
  const double ea = s.skin.axial_modulus_soft * s.FilmArea();
  EXPECT_NEAR(ea, 31.6, 0.05);
  const double expected = 40e3 * kPi * s.radius * s.radius / ea;
  EXPECT_NEAR(*ElongationStrain(s, 40e3), expected, 1e-12);
  EXPECT_NEAR(*ElongationStrain(s, 40e3), 1.02, 0.01);
}

TEST(ElongationTest, SaturatesWithTautSlope) {
  const RobotSpec s = Spec();
  const double a = s.FilmArea(), r = s.radius;
  const double e1 = *ElongationStrain(s, 100e3);
  const double e2 = *ElongationStrain(s, 200e3);
  EXPECT_GT(e1, s.skin.wrinkle_strain);
  EXPECT_LT(e2, s.skin.wrinkle_strain + 0.01);
  const double slope = (e2 - e1) / (100e3 * kPi * r * r);
  EXPECT_NEAR(slope * s.skin.axial_modulus_taut * a, 1.0, 1e-9);
  EXPECT_NEAR(*ElongationStrain(s, 60e3), oracle::ElongationScan(s, 60e3), 1e-6);
}

TEST(BendEquilibriumTest, ZeroPressureBelowBreakaway) {
  absl::StatusOr<EquilibriumSolution> sol =
      SolveBendEquilibrium(Spec(), Spec().segments[0], 0.0, Side::kLeft);
  ASSERT_TRUE(sol.ok());
  EXPECT_EQ(sol->strain, 0.0);
  EXPECT_TRUE(sol->below_breakaway);
  EXPECT_EQ(sol->arc.kind, ArcKind::kStraight);
}

TEST(BendEquilibriumTest, LongSegmentFortyKpa) {
  const RobotSpec s = Spec(0.160);
  absl::StatusOr<EquilibriumSolution> sol =
      SolveBendEquilibrium(s, s.segments[0], 40e3, Side::kLeft);
  ASSERT_TRUE(sol.ok());
  EXPECT_NEAR(sol->strain, 0.40, 0.01);
  EXPECT_NEAR(sol->bend_angle, 2.0, 0.05);
  EXPECT_NEAR(sol->strain, oracle::ScanBendStrain(s, 0.160, 40e3, s.jamming_right),
              2e-6);
}

TEST(BendEquilibriumTest, FrictionlessClosedForm) {
  RobotSpec s = Spec();
  s.jamming_left.k_theta = 1e-300;
  s.jamming_right.k_theta = 1e-300;
  s.jamming_left.mu = s.jamming_right.mu = 0.0;
  s.skin.wrinkle_strain = 10.0;
  for (double p : {5e3, 20e3, 60e3}) {
    absl::StatusOr<EquilibriumSolution> sol =
        SolveBendEquilibrium(s, s.segments[0], p, Side::kRight);
    ASSERT_TRUE(sol.ok());
    const double r = s.radius;
    const double closed =
        p * kPi * r * r * r / (2 * r * s.skin.axial_modulus_soft * s.FilmArea());
    EXPECT_NEAR(sol->strain / closed, 1.0, 1e-9);
  }
}

TEST(BendEquilibriumTest, RandomizedAgainstGridScan) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> pd(0.0, 60e3), kd(0.5, 5.0),
      md(0.0, 0.5);
  double solver_seconds = 0.0;
  int stuck = 0;
  for (int i = 0; i < 100; ++i) {
    RobotSpec s = Spec();
    s.jamming_right.k_theta = kd(rng);
    s.jamming_right.mu = md(rng);
    const double p = pd(rng);
    const auto t0 = std::chrono::steady_clock::now();
    absl::StatusOr<EquilibriumSolution> sol =
        SolveBendEquilibrium(s, s.segments[0], p, Side::kLeft);
    solver_seconds +=
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ASSERT_TRUE(sol.ok()) << sol.status();
    const double r = s.radius;
    if (sol->below_breakaway) {
      // Static friction holds the segment straight; no root to converge on.
      ++stuck;
      EXPECT_EQ(sol->strain, 0.0);
      EXPECT_GE(BendMomentResidual(s, s.segments[0], p, Side::kLeft, 0.0), 0.0);
    } else {
      EXPECT_LE(std::abs(sol->residual), 1e-9 * std::max(1.0, p * kPi * r * r * r));
    }
    EXPECT_NEAR(sol->strain, oracle::ScanBendStrain(s, 0.1, p, s.jamming_right),
                2e-6)
        << "set " << i;
  }
  EXPECT_LT(solver_seconds, 1.0);
  EXPECT_LT(stuck, 50);
}

TEST(BendEquilibriumTest, GeometryConsistent) {
  const RobotSpec s = Spec();
  absl::StatusOr<EquilibriumSolution> sol =
      SolveBendEquilibrium(s, s.segments[0], 50e3, Side::kRight);
  ASSERT_TRUE(sol.ok());
  const double r = s.radius, l = 0.1;
  EXPECT_NEAR(sol->arc.inner_radius * sol->bend_angle / l, 1.0, 1e-12);
  EXPECT_NEAR((sol->arc.inner_radius + 2 * r) * sol->bend_angle /
                  (l * (1 + sol->strain)),
              1.0, 1e-12);
  EXPECT_EQ(sol->arc.side, Side::kRight);
}

TEST(BendEquilibriumTest, MonotoneInPressure) {
  const RobotSpec s = Spec();
  EquilibriumSolution prev;
  for (int i = 0; i <= 120; ++i) {
    const double p = 0.5e3 * i;
    absl::StatusOr<EquilibriumSolution> sol =
        SolveBendEquilibrium(s, s.segments[0], p, Side::kLeft);
    ASSERT_TRUE(sol.ok());
    EXPECT_GE(sol->strain, prev.strain);
    EXPECT_GE(sol->bend_angle, prev.bend_angle);
    EXPECT_GE(sol->Curvature(), prev.Curvature());
    EXPECT_GE(sol->wall_tension, prev.wall_tension);
    prev = *sol;
  }
}

TEST(BendEquilibriumTest, RejectsBadInput) {
  const RobotSpec s = Spec();
  EXPECT_FALSE(SolveBendEquilibrium(s, s.segments[0], -1.0, Side::kLeft).ok());
  EXPECT_FALSE(SolveBendEquilibrium(s, s.segments[0], 1e3, Side::kNone).ok());
}

TEST(TipForceTest, ZeroAtEquilibrium) {
  const RobotSpec s = Spec();
  for (double p : {10e3, 30e3, 60e3}) {
    absl::StatusOr<EquilibriumSolution> sol =
        SolveBendEquilibrium(s, s.segments[0], p, Side::kLeft);
    ASSERT_TRUE(sol.ok());
    const double lever = 0.19;
    const double f = *TipForceLengthening(s, s.segments[0], p, sol->strain, lever);
    EXPECT_LE(std::abs(f), 1e-9 * std::max(1.0, p * kPi * std::pow(s.radius, 3)) / lever);
  }
}

TEST(TipForceTest, FullyConstrainedAtSixtyKpa) {
  const RobotSpec s = Spec();
  const double f = *TipForceLengthening(s, s.segments[0], 60e3, 0.0, 0.19);
  const double hand = (60e3 * kPi * std::pow(0.016, 3) - 2 * 0.016 * 2.0) / 0.19;
  EXPECT_NEAR(f, hand, 1e-12);
  EXPECT_NEAR(f, 3.7, 0.05);
}

TEST(TipForceTest, FpamFreeContraction) {
  const RobotSpec s = Spec();
  const FpamSpec fpam;
  const double free_eps = 1.0 - std::sqrt(fpam.b_coeff / fpam.a_coeff);
  EXPECT_NEAR(MuscleForce(fpam, free_eps), 0.0, 1e-12);
  const double f = *TipForceFpam(s, fpam, 20e3, free_eps, 0.19);
  EXPECT_NEAR(f, -20e3 * kPi * std::pow(s.radius, 3) / 0.19, 1e-9);
  EXPECT_LT(f, 0.0);
  FpamSpec idle = fpam;
  idle.muscle_pressure = 0.0;
  EXPECT_EQ(*TipForceFpam(s, idle, 0.0, 0.2, 0.19), 0.0);
}

TEST(TipForceTest, AntagonisticSigns) {
  const RobotSpec s = Spec();
  const FpamSpec fpam;
  const double h = 10.0;
  for (double p : {5e3, 15e3, 30e3, 45e3, 58e3}) {
    const double dl = (*TipForceLengthening(s, s.segments[0], p + h, 0.1, 0.19) -
                       *TipForceLengthening(s, s.segments[0], p - h, 0.1, 0.19)) /
                      (2 * h);
    const double df = (*TipForceFpam(s, fpam, p + h, 0.1, 0.19) -
                       *TipForceFpam(s, fpam, p - h, 0.1, 0.19)) /
                      (2 * h);
    EXPECT_GT(dl, 0.0);
    EXPECT_LT(df, 0.0);
  }
}

TEST(TipForceTest, RejectsBadLever) {
  const RobotSpec s = Spec();
  EXPECT_FALSE(TipForceLengthening(s, s.segments[0], 1e3, 0.0, 0.0).ok());
  EXPECT_FALSE(TipForceFpam(s, FpamSpec{}, 1e3, 1.0, 0.19).ok());
}

TEST(FpamTest, CurvatureFallsWithBodyPressure) {
  const RobotSpec s = Spec();
  double prev = std::numeric_limits<double>::infinity();
  for (double body : {10e3, 20e3, 30e3}) {
    absl::StatusOr<FpamEquilibrium> eq = SolveFpamContraction(s, FpamSpec{}, body);
    ASSERT_TRUE(eq.ok());
    EXPECT_LT(eq->Curvature(s.radius), prev);
    prev = eq->Curvature(s.radius);
  }
}

TEST(SweepTest, LengtheningZeroHeadAndMonotone) {
  const RobotSpec s = Spec();
  std::vector<double> ps;
  for (int i = 0; i <= 12; ++i) ps.push_back(5e3 * i);
  absl::StatusOr<std::vector<SweepPoint>> pts =
      CurvatureSweep(s, s.segments[0], ps, LengtheningMode{});
  ASSERT_TRUE(pts.ok());
  EXPECT_EQ(pts->front().curvature, 0.0);
  for (size_t i = 1; i < pts->size(); ++i) {
    EXPECT_GE((*pts)[i].curvature, (*pts)[i - 1].curvature);
  }
  EXPECT_LE(pts->back().inner_radius, 0.052);
  EXPECT_GE(pts->back().inner_radius, 0.044);
}

TEST(SweepTest, RejectsDescendingPressures) {
  const RobotSpec s = Spec();
  std::vector<double> ps = {10e3, 5e3};
  EXPECT_FALSE(CurvatureSweep(s, s.segments[0], ps, LengtheningMode{}).ok());
}

TEST(StiffnessTest, TrendScalesWithCube) {
  const RobotSpec s = Spec();
  EXPECT_EQ(*BendingStiffnessTrend(s, 0.0), 0.0);
  EXPECT_NEAR(*BendingStiffnessTrend(s, 2e3) / *BendingStiffnessTrend(s, 1e3), 2.0,
              1e-12);
}

}  // namespace
}  // namespace vinesim
