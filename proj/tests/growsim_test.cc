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

#include "vinesim/growsim.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "vinesim/kinematics.h"
#include "vinesim/scenario.h"

namespace vinesim {
namespace {

using command::Grow;
using command::Retract;
using command::SetJam;
using command::SetPressure;

ConvexObstacle Box(double x0, double y0, double x1, double y1) {
  return {{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

SimContext Context(const Environment& env = {}, int segments = 2) {
  absl::StatusOr<SimContext> ctx = MakeSimContext(DefaultRobotSpec(segments), env);
  EXPECT_TRUE(ctx.ok()) << ctx.status();
  return *ctx;
}

SimState RunScript(const SimContext& ctx, const std::vector<Command>& script) {
  absl::StatusOr<SimState> s = InitialState(ctx);
  EXPECT_TRUE(s.ok()) << s.status();
  for (const Command& c : script) {
    absl::StatusOr<SimState> next = Step(ctx, *s, c);
    EXPECT_TRUE(next.ok()) << next.status();
    s = std::move(next);
  }
  return *s;
}

bool HasEvent(const SimState& s, const std::string& kind) {
  return std::any_of(s.events.begin(), s.events.end(),
                     [&](const Event& e) { return e.kind == kind; });
}

TEST(GrowTest, StraightGrowthAdvancesExactly) {
  const SimContext ctx = Context();
  const SimState s = RunScript(ctx, {SetPressure{20e3}, Grow{0.05}});
  const Pose2 tip = TipPose(s.chain);
  EXPECT_NEAR(tip.x, 0.05, 1e-12);
  EXPECT_NEAR(tip.y, 0.0, 1e-15);
  EXPECT_NEAR(s.robot.everted_length, 0.05, 1e-12);
  EXPECT_NEAR(s.chain.CenterlineLength(), s.robot.everted_length, 1e-12);
  EXPECT_EQ(s.tick, 2);
}

TEST(GrowTest, LeftJamCurvesLeft) {
  const SimContext ctx = Context();
  const SimState s = RunScript(ctx, {SetJam{0, Side::kLeft, JamState::kJammed},
                               SetPressure{40e3}, Grow{0.1}});
  const Pose2 tip = TipPose(s.chain);
  EXPECT_GT(tip.y, 0.0);
  EXPECT_GT(tip.heading, 0.0);
  EXPECT_EQ(s.robot.segments[0].bend_side, Side::kLeft);
}

TEST(GrowTest, RightJamMirrorsLeft) {
  const SimContext ctx = Context();
  const SimState l = RunScript(ctx, {SetJam{0, Side::kLeft, JamState::kJammed},
                               SetPressure{40e3}, Grow{0.1}});
  const SimState r = RunScript(ctx, {SetJam{0, Side::kRight, JamState::kJammed},
                               SetPressure{40e3}, Grow{0.1}});
  const Pose2 a = TipPose(l.chain), b = TipPose(r.chain);
  EXPECT_NEAR(a.x, b.x, 1e-12);
  EXPECT_NEAR(a.y, -b.y, 1e-12);
  EXPECT_NEAR(a.heading, -b.heading, 1e-12);
}

TEST(GrowTest, HeadOnWallBlocks) {
  Environment env;
  env.obstacles.push_back(Box(0.05, -0.1, 0.1, 0.1));
  const SimContext ctx = Context(env);
  const SimState first = RunScript(ctx, {SetPressure{20e3}, Grow{0.2}});
  EXPECT_TRUE(HasEvent(first, "blocked"));
  EXPECT_LT(first.robot.everted_length, 0.05 - 0.016 + 2e-3);
  absl::StatusOr<SimState> again = Step(ctx, first, Grow{0.05});
  ASSERT_TRUE(again.ok());
  EXPECT_EQ(again->robot.everted_length, first.robot.everted_length);
  EXPECT_EQ(again->events.back().kind, "blocked");
  EXPECT_NE(again->events.back().detail.find("reason=head-on"), std::string::npos);
}

TEST(GrowTest, ObliqueWallDeflects) {
  Environment env;
  // Wall face tilted 45 degrees across the growth direction.
  env.obstacles.push_back({{{0.10, -0.10}, {0.30, 0.10}, {0.30, -0.10}}});
  const SimContext ctx = Context(env);
  const SimState s = RunScript(ctx, {SetPressure{20e3}, Grow{0.25}});
  EXPECT_TRUE(HasEvent(s, "deflected"));
  EXPECT_GT(s.robot.everted_length, 0.2);
  EXPECT_GT(TipPose(s.chain).heading, 0.5);
}

TEST(GrowTest, NoPressureStalls) {
  const SimState s = RunScript(Context(), {Grow{0.05}});
  EXPECT_TRUE(HasEvent(s, "stalled"));
  EXPECT_EQ(s.robot.everted_length, 0.0);
}

TEST(GrowTest, MaterialClampedWithEvent) {
  const SimContext ctx = Context();
  const SimState s = RunScript(ctx, {SetPressure{20e3}, Grow{10.0}});
  EXPECT_TRUE(HasEvent(s, "material-exhausted"));
  EXPECT_NEAR(s.robot.everted_length, s.Capacity(ctx.spec.radius), 1e-12);
}

TEST(GrowTest, ConservationOfMaterial) {
  const SimContext ctx = Context();
  absl::StatusOr<SimState> s = InitialState(ctx);
  const std::vector<Command> script = {
      SetPressure{60e3}, Grow{0.3}, SetJam{1, Side::kRight, JamState::kJammed},
      SetPressure{10e3}, Grow{0.1}, SetPressure{50e3}, Grow{0.5}};
  for (const Command& c : script) {
    s = Step(ctx, *s, c);
    ASSERT_TRUE(s.ok());
    double bound = 0.0;
    for (size_t i = 0; i < ctx.spec.segments.size(); ++i) {
      bound += ctx.spec.segments[i].rest_length * (1 + s->robot.segments[i].strain);
    }
    EXPECT_LE(s->robot.everted_length, bound + 1e-12);
    EXPECT_NEAR(s->chain.CenterlineLength(), s->robot.everted_length, 1e-12);
  }
}

TEST(GrowTest, RetractInvertsGrow) {
  const SimContext ctx = Context();
  const SimState before = RunScript(ctx, {SetPressure{30e3}, Grow{0.04}});
  absl::StatusOr<SimState> grown = Step(ctx, before, Grow{0.07});
  ASSERT_TRUE(grown.ok());
  absl::StatusOr<SimState> back = Step(ctx, *grown, Retract{0.07});
  ASSERT_TRUE(back.ok());
  EXPECT_NEAR(back->robot.everted_length, before.robot.everted_length, 1e-12);
}

TEST(GrowTest, HeavyMassBlocks) {
  Environment env;
  env.masses.push_back({{0.1, 0.0}, 1000.0, 0.5, 0.02});
  const SimState s = RunScript(Context(env), {SetPressure{10e3}, Grow{0.2}});
  ASSERT_TRUE(HasEvent(s, "blocked"));
  EXPECT_NE(s.events.back().detail.find("mass-too-heavy"), std::string::npos);
}

TEST(StepTest, ErrorsLeaveStateAlone) {
  const SimContext ctx = Context();
  absl::StatusOr<SimState> s = InitialState(ctx);
  EXPECT_FALSE(Step(ctx, *s, SetJam{5, Side::kLeft, JamState::kJammed}).ok());
  EXPECT_FALSE(Step(ctx, *s, SetPressure{-1.0}).ok());
  EXPECT_FALSE(Step(ctx, *s, Grow{-0.01}).ok());
  EXPECT_FALSE(Step(ctx, *s, Retract{-0.01}).ok());
}

TEST(StepTest, UnavailableBrakeSide) {
  RobotSpec spec = DefaultRobotSpec(1);
  spec.segments[0].jam_sides.right = false;
  absl::StatusOr<SimContext> ctx = MakeSimContext(spec, {});
  ASSERT_TRUE(ctx.ok());
  absl::StatusOr<SimState> s = InitialState(*ctx);
  EXPECT_FALSE(Step(*ctx, *s, SetJam{0, Side::kRight, JamState::kJammed}).ok());
}

TEST(SegmentShapeTest, BrakeCombinations) {
  const RobotSpec spec = *ValidateSpec(DefaultRobotSpec(1));
  const SegmentSpec& seg = spec.segments[0];
  const auto none = SegmentShape(spec, seg, 30e3, JamState::kReleased, JamState::kReleased);
  const auto both = SegmentShape(spec, seg, 30e3, JamState::kJammed, JamState::kJammed);
  const auto left = SegmentShape(spec, seg, 30e3, JamState::kJammed, JamState::kReleased);
  ASSERT_TRUE(none.ok() && both.ok() && left.ok());
  EXPECT_EQ(none->arc.kind, ArcKind::kStraight);
  EXPECT_GT(none->arc.length, seg.rest_length);
  EXPECT_EQ(both->arc, Arc::Straight(seg.rest_length));
  EXPECT_EQ(left->arc.side, Side::kLeft);
  EXPECT_EQ(left->bend_side, Side::kLeft);
}

TEST(GapPassableTest, Examples) {
  const RobotSpec spec = DefaultRobotSpec(1);
  EXPECT_TRUE(GapPassable(spec, 0.025, 0.75));
  EXPECT_TRUE(GapPassable(spec, 0.032, 1.0));
  EXPECT_TRUE(GapPassable(spec, 0.032, 0.5));
  EXPECT_FALSE(GapPassable(spec, 0.010, 0.75));
}

TEST(CanPushTest, Examples) {
  const RobotSpec spec = DefaultRobotSpec(1);
  EXPECT_NEAR(AxialTipForce(spec, 10e3), 8.04, 0.01);
  EXPECT_TRUE(CanPush(spec, 10e3, 0.2, 0.5));
  EXPECT_TRUE(CanPush(spec, 0.0, 0.0, 0.5));
  EXPECT_FALSE(CanPush(spec, 0.0, 0.2, 0.5));
}

TEST(CollideTest, EmptyEnvironment) {
  ArcChain chain;
  chain.arcs = {Arc::Straight(0.2)};
  EXPECT_TRUE(Collide(chain, *ValidateSpec(DefaultRobotSpec(1)), {}).empty());
}

TEST(CollideTest, StraightIntoWall) {
  Environment env;
  env.obstacles.push_back(Box(0.05, -0.1, 0.1, 0.1));
  ArcChain chain;
  chain.arcs = {Arc::Straight(0.1)};
  const auto contacts = Collide(chain, *ValidateSpec(DefaultRobotSpec(1)), env);
  ASSERT_FALSE(contacts.empty());
  for (const auto& c : contacts) {
    EXPECT_EQ(c.kind, ContactKind::kObstacle);
    EXPECT_GT(c.penetration, 0.0);
  }
}

TEST(CollideTest, CenteredInPassableGap) {
  Environment env;
  env.obstacles.push_back(Box(0.12, 0.0125, 0.14, 0.1));
  env.obstacles.push_back(Box(0.12, -0.1, 0.14, -0.0125));
  env.gaps.push_back({{0.115, 0.0}, {0.145, 0.0}, 0.025});
  ArcChain chain;
  chain.arcs = {Arc::Straight(0.13)};
  EXPECT_TRUE(Collide(chain, *ValidateSpec(DefaultRobotSpec(1)), env).empty());
  env.gaps[0].width = 0.010;
  const auto blocked = Collide(chain, *ValidateSpec(DefaultRobotSpec(1)), env);
  EXPECT_FALSE(blocked.empty());
}

class BundledScenarioTest : public ::testing::TestWithParam<std::string> {};

TEST_P(BundledScenarioTest, DeterministicAndNonPenetrating) {
  absl::StatusOr<Scenario> sc = LoadBundledScenario(GetParam());
  ASSERT_TRUE(sc.ok()) << sc.status();
  absl::StatusOr<SimContext> ctx = MakeSimContext(sc->robot, sc->env, sc->config);
  ASSERT_TRUE(ctx.ok());
  std::string logs[2];
  RobotState finals[2];
  for (int run = 0; run < 2; ++run) {
    absl::StatusOr<SimState> s = InitialState(*ctx);
    ASSERT_TRUE(s.ok());
    for (const Command& c : sc->script) {
      s = Step(*ctx, *s, c);
      ASSERT_TRUE(s.ok()) << s.status();
      for (const ContactRecord& rec : s->contacts) {
        if (rec.kind == ContactKind::kObstacle) {
          EXPECT_LE(rec.penetration, ctx->config.contact_tolerance);
        }
      }
    }
    EXPECT_TRUE(s->AllTargetsReached());
    logs[run] = FormatEventLog(s->events);
    finals[run] = s->robot;
  }
  EXPECT_EQ(logs[0], logs[1]);
  EXPECT_EQ(finals[0], finals[1]);
}

INSTANTIATE_TEST_SUITE_P(All, BundledScenarioTest,
                         ::testing::Values("gap", "push", "s_curve"));

TEST(BundledSignatureTest, SignatureEvents) {
  auto run = [](const std::string& name) {
    const Scenario sc = *LoadBundledScenario(name);
    const SimContext ctx = *MakeSimContext(sc.robot, sc.env, sc.config);
    return RunScript(ctx, sc.script);
  };
  EXPECT_TRUE(HasEvent(run("gap"), "gap-passed"));
  EXPECT_TRUE(HasEvent(run("push"), "mass-pushed"));
  const SimState s = run("s_curve");
  const Pose2 tip = TipPose(s.chain);
  EXPECT_NEAR(tip.heading, 0.0, 1e-6);
  EXPECT_GT(std::abs(tip.y), 0.1);
}

TEST(EventLogTest, Format) {
  std::vector<Event> ev = {{1, "gap-passed", "gap=0"}, {3, "blocked", "reason=x"}};
  EXPECT_EQ(FormatEventLog(ev), "tick,event,detail\n1,gap-passed,gap=0\n3,blocked,reason=x\n");
}

TEST(EnvironmentTest, Validation) {
  Environment env;
  env.gaps.push_back({{0, 0}, {1, 0}, 0.0});
  EXPECT_FALSE(ValidateEnvironment(env).ok());
  env.gaps.clear();
  env.masses.push_back({{0, 0}, 0.0, 0.5});
  EXPECT_FALSE(ValidateEnvironment(env).ok());
  env.masses[0].mass = 0.2;
  env.masses[0].friction_coeff = -1.0;
  EXPECT_FALSE(ValidateEnvironment(env).ok());
}

}  // namespace
}  // namespace vinesim
