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

#include "vinesim/jamming.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "vinesim/material.h"

namespace vinesim {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(CriticalForceTest, ZeroAngleIsBaseForce) {
  EXPECT_DOUBLE_EQ(CriticalForce(JammingUnit{}, 0.0)->force, 2.0);
}

TEST(CriticalForceTest, HalfTurn) {
  EXPECT_NEAR(CriticalForce(JammingUnit{}, kPi)->force, 2.0 * std::exp(0.3 * kPi),
              1e-12);
  EXPECT_NEAR(CriticalForce(JammingUnit{}, kPi)->force, 5.13, 0.005);
}

TEST(CriticalForceTest, ReleasedHoldsNothing) {
  const JammingUnit u = SetState(JammingUnit{}, JamState::kReleased);
  absl::StatusOr<HoldingForce> f = CriticalForce(u, 1.0);
  ASSERT_TRUE(f.ok());
  EXPECT_TRUE(f->released);
  EXPECT_EQ(f->force, 0.0);
  EXPECT_FALSE(CriticalForce(JammingUnit{}, -0.1).ok());
}

TEST(CriticalForceTest, StrictlyIncreasingOverFullTurn) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> k(0.5, 5.0), mu(0.01, 0.5);
  for (int trial = 0; trial < 20; ++trial) {
    JammingUnit u;
    u.k_theta = k(rng);
    u.mu = mu(rng);
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
      const double f = CriticalForce(u, 2.0 * kPi * i / 1000.0)->force;
      EXPECT_GT(f, prev);
      prev = f;
    }
  }
  JammingUnit flat;
  flat.mu = 0.0;
  EXPECT_EQ(CriticalForce(flat, 0.0)->force, CriticalForce(flat, 6.0)->force);
}

TEST(HoldsTest, Examples) {
  const JammingUnit jammed;
  const JammingUnit released = SetState(jammed, JamState::kReleased);
  EXPECT_FALSE(Holds(released, 0.5, 1e-9));
  EXPECT_TRUE(Holds(jammed, 0.5, 0.0));
  EXPECT_TRUE(Holds(jammed, kPi, 5.0));
  EXPECT_FALSE(Holds(jammed, kPi, 5.3));
}

TEST(HoldsTest, MonotoneInTension) {
  const JammingUnit u;
  for (double theta : {0.0, 1.0, 2.5, 6.0}) {
    bool held = true;
    for (int i = 0; i <= 200; ++i) {
      const bool h = Holds(u, theta, 0.05 * i);
      // Once it slips it never holds again at a larger tension.
      if (!held) EXPECT_FALSE(h);
      held = h;
    }
  }
}

TEST(SetStateTest, RoundTripPreservesParameters) {
  JammingUnit u;
  u.k_theta = 3.3;
  u.mu = 0.17;
  const JammingUnit back =
      SetState(SetState(u, JamState::kReleased), JamState::kJammed);
  EXPECT_EQ(back, u);
}

TEST(SetStateTest, DefaultUnderPressureIsJammed) {
  EXPECT_EQ(DefaultStateUnderPressure(10e3), JamState::kJammed);
  EXPECT_EQ(DefaultStateUnderPressure(0.0), JamState::kReleased);
}

std::vector<CapstanSample> Synthetic(double k, double mu,
                                     const std::vector<double>& angles) {
  std::vector<CapstanSample> out;
  for (double a : angles) out.push_back({a, k * std::exp(mu * a)});
  return out;
}

TEST(FitCapstanTest, NoiselessRoundTrip) {
  absl::StatusOr<CapstanFit> fit =
      FitCapstan(Synthetic(2.0, 0.3, {0.0, 0.5, 1.0, 2.0, kPi, 5.0}));
  ASSERT_TRUE(fit.ok());
  EXPECT_NEAR(fit->k_theta, 2.0, 1e-12);
  EXPECT_NEAR(fit->mu, 0.3, 1e-12);
  EXPECT_NEAR(fit->r_squared, 1.0, 1e-12);
}

TEST(FitCapstanTest, RepeatedAngleIsDegenerate) {
  std::vector<CapstanSample> same(5, CapstanSample{kPi / 2, 3.0});
  EXPECT_FALSE(FitCapstan(same).ok());
}

TEST(FitCapstanTest, NonPositiveForceNamesSample) {
  auto s = Synthetic(2.0, 0.3, {0.0, 1.0, 2.0});
  s[1].force = 0.0;
  absl::StatusOr<CapstanFit> fit = FitCapstan(s);
  ASSERT_FALSE(fit.ok());
  EXPECT_NE(fit.status().message().find("sample 1"), absl::string_view::npos);
}

struct LogOracle {
  double k = 0.0;
  double mu = 0.0;
};

LogOracle LogSpaceFit(const std::vector<CapstanSample>& s) {
  const double n = static_cast<double>(s.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& p : s) {
    const double y = std::log(p.force);
    sx += p.angle;
    sy += y;
    sxx += p.angle * p.angle;
    sxy += p.angle * y;
  }
  const double mu = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {std::exp((sy - mu * sx) / n), mu};
}

TEST(FitCapstanTest, MatchesLogSpaceOracleAtNoiseExtremes) {
  const std::vector<double> angles = {0.0, 0.5, 1.0};
  const double signs[][3] = {{1, -1, 1}, {-1, 1, -1}, {1, 1, -1}, {-1, -1, 1}};
  for (const auto& sg : signs) {
    std::vector<CapstanSample> s = Synthetic(3.0, 0.4, angles);
    for (int i = 0; i < 3; ++i) s[i].force *= 1.0 + 0.01 * sg[i];
    absl::StatusOr<CapstanFit> fit = FitCapstan(s);
    ASSERT_TRUE(fit.ok());
    const LogOracle o = LogSpaceFit(s);
    EXPECT_NEAR(fit->mu, o.mu, 1e-12);
    EXPECT_NEAR(fit->k_theta, o.k, 1e-12);
  }
}

TEST(FitCapstanTest, OnePercentNoise) {
  // Multiplicative noise drawn uniformly from +-1% at three angles.
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> noise(-0.01, 0.01);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<CapstanSample> s = Synthetic(3.0, 0.4, {0.0, 0.5, 1.0});
    for (auto& p : s) p.force *= 1.0 + noise(rng);
    absl::StatusOr<CapstanFit> fit = FitCapstan(s);
    ASSERT_TRUE(fit.ok());
    const LogOracle o = LogSpaceFit(s);
    EXPECT_NEAR(fit->mu, o.mu, 1e-12);
    EXPECT_NEAR(fit->k_theta, 3.0, 0.02 * 3.0);
    EXPECT_NEAR(fit->mu, 0.4, 0.02);
  }
}

}  // namespace
}  // namespace vinesim
