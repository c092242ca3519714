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

// Quasi-static growth of a vine robot through a planar environment.
//
// Every command fully re-equilibrates the body: each segment's shape is a
// function of body pressure and its own brake states, and the everted part
// of the robot is the prefix of that shape up to the everted centerline
// length. Growth advances the tip in small substeps and resolves contact at
// the tip:
//   * oblique contact (incidence above the deflection threshold) buckles the
//     body at the tip so growth continues along the obstacle tangent;
//   * head-on contact blocks growth;
//   * a pushable mass is shoved ahead if the axial tip force beats friction;
//   * passable gaps exempt the body from obstacle contact inside the gap.

#ifndef VINESIM_GROWSIM_H_
#define VINESIM_GROWSIM_H_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "vinesim/model.h"

namespace vinesim {

struct ConvexObstacle {
  std::vector<Vec2> vertices;  // m
};

// Passage from p1 to p2 (the gap axis) with clear opening `width`.
struct Gap {
  Vec2 p1;
  Vec2 p2;
  double width = 0.0;  // m
};

struct PushableMass {
  Vec2 position;
  double mass = 0.0;  // kg
  double friction_coeff = 0.0;
  double radius = 0.020;  // m
};

struct Environment {
  std::vector<ConvexObstacle> obstacles;
  std::vector<Gap> gaps;
  std::vector<PushableMass> masses;
  std::vector<Vec2> targets;
};

absl::Status ValidateEnvironment(const Environment& env);

struct SimConfig {
  Pose2 base_pose;
  double squeeze_ratio = 0.75;
  double deflect_threshold = 0.2617993877991494;  // rad (15 deg)
  double contact_tolerance = 1e-4;                // m
  double grow_substep = 1e-3;                     // m
  double target_tolerance = 0.010;                // m
  double polyline_deviation = 2.5e-4;             // m
  JamState initial_jam = JamState::kReleased;
  double initial_pressure = 0.0;  // Pa
};

namespace command {
struct SetPressure {
  double pressure = 0.0;  // Pa
};
struct SetJam {
  int segment = 0;
  Side side = Side::kLeft;
  JamState state = JamState::kJammed;
};
struct Grow {
  double length = 0.0;  // m
};
struct Retract {
  double length = 0.0;  // m
};
}  // namespace command

using Command = std::variant<command::SetPressure, command::SetJam,
                             command::Grow, command::Retract>;

enum class ContactKind { kObstacle, kGap };

struct ContactRecord {
  int sample = 0;  // index into the backbone polyline
  ContactKind kind = ContactKind::kObstacle;
  int index = 0;  // obstacle or gap index
  Vec2 point;
  double penetration = 0.0;  // m, tube radius minus clearance
};

struct Event {
  int64_t tick = 0;
  std::string kind;    // gap-passed, mass-pushed, target-reached, blocked, ...
  std::string detail;  // space-separated key=value pairs, no commas

  friend bool operator==(const Event&, const Event&) = default;
};

// Passive buckle left where the tip was deflected by an obstacle.
struct PassiveKink {
  double arclength = 0.0;  // m along the centerline from the base
  double angle = 0.0;      // rad
  Side side = Side::kLeft;

  friend bool operator==(const PassiveKink&, const PassiveKink&) = default;
};

struct SimState {
  int64_t tick = 0;
  RobotState robot;
  std::vector<Arc> segment_arcs;  // full pressurized shape of each segment
  ArcChain chain;                 // everted part only
  std::vector<PassiveKink> kinks;
  std::vector<ContactRecord> contacts;
  std::vector<Event> events;
  std::vector<Vec2> mass_positions;
  std::vector<bool> mass_pushed;
  std::vector<bool> targets_reached;
  std::vector<bool> gaps_entered;
  std::vector<bool> gaps_passed;

  // Centerline length available if fully everted.
  double Capacity(double tube_radius) const;
  bool AllTargetsReached() const;
};

// Everything that stays fixed while a simulation runs.
struct SimContext {
  RobotSpec spec;  // validated
  Environment env;
  SimConfig config;
};

absl::StatusOr<SimContext> MakeSimContext(const RobotSpec& spec,
                                          const Environment& env,
                                          const SimConfig& config = {});

absl::StatusOr<SimState> InitialState(const SimContext& ctx);

// Applies one command. Errors (bad segment, negative length, unavailable
// brake side) leave no state change; physical refusals are events.
absl::StatusOr<SimState> Step(const SimContext& ctx, const SimState& state,
                              const Command& command);

struct SegmentShapeResult {
  double strain = 0.0;
  Side bend_side = Side::kNone;
  Arc arc;
};

// Pressurized shape of one segment for a pair of brake states: one side
// jammed bends toward it, neither jammed elongates straight, both jammed
// stays straight at rest length.
absl::StatusOr<SegmentShapeResult> SegmentShape(const RobotSpec& spec,
                                                const SegmentSpec& seg,
                                                double pressure,
                                                JamState left,
                                                JamState right);

bool GapPassable(const RobotSpec& spec, double gap_width,
                 double squeeze_ratio);

// Axial tip force P * pi * r^2 against sliding friction mu * m * g.
bool CanPush(const RobotSpec& spec, double pressure, double mass,
             double friction_coeff);

double AxialTipForce(const RobotSpec& spec, double pressure);

// Backbone samples closer than the tube radius to an obstacle, or lying
// inside an impassable gap. Samples inside passable gaps are exempt.
std::vector<ContactRecord> Collide(const ArcChain& chain,
                                   const RobotSpec& spec,
                                   const Environment& env,
                                   const SimConfig& config = {});

// Builds the everted chain from full segment shapes, the everted length,
// and passive kinks.
ArcChain BuildEvertedChain(const std::vector<Arc>& segment_arcs,
                           double everted_length,
                           const std::vector<PassiveKink>& kinks,
                           const Pose2& base_pose, double tube_radius);

// CSV with header `tick,event,detail`.
std::string FormatEventLog(const std::vector<Event>& events);

}  // namespace vinesim

#endif  // VINESIM_GROWSIM_H_
