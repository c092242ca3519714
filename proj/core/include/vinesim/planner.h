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

// Inverse steering. A plan assigns each segment a bend side (or none) under a
// single shared body pressure; its tip is the forward kinematics of the fully
// everted robot. The search enumerates every assignment over a pressure grid
// and then refines the pressure of the best assignment.

#ifndef VINESIM_PLANNER_H_
#define VINESIM_PLANNER_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "vinesim/growsim.h"
#include "vinesim/model.h"

namespace vinesim {

inline constexpr int kMaxPlannerSegments = 8;

struct Plan {
  std::vector<Side> assignment;  // per segment; kNone means no brake jammed
  double pressure = 0.0;         // Pa
  Pose2 predicted_tip;
  double cost = 0.0;       // m, |predicted_tip - target|
  double grid_cost = 0.0;  // m, best cost before pressure refinement
  double grid_pressure = 0.0;

  int JammedCount() const;
};

// One evaluated (assignment, pressure) pair.
struct FrontierRow {
  std::vector<Side> assignment;
  double pressure = 0.0;
  Pose2 tip;
  double cost = 0.0;
};

struct PlanResult {
  Plan best;
  bool reachable = false;  // best.cost <= tolerance
  std::vector<FrontierRow> frontier;  // grid evaluations in enumeration order
};

struct PlannerOptions {
  Pose2 base_pose;
  int refine_iterations = 80;
  bool record_frontier = false;
};

// "N", "L", "R" per segment joined by '-', e.g. "L-R".
std::string AssignmentName(const std::vector<Side>& assignment);

// All assignments the robot's brake sides allow, in lexicographic order with
// kNone < kLeft < kRight.
std::vector<std::vector<Side>> EnumerateAssignments(const RobotSpec& spec);

// Fully everted chain for an assignment at a pressure.
absl::StatusOr<ArcChain> AssignmentChain(const RobotSpec& spec,
                                         const std::vector<Side>& assignment,
                                         double pressure,
                                         const Pose2& base_pose = {});

absl::StatusOr<Pose2> EvaluateTip(const RobotSpec& spec,
                                  const std::vector<Side>& assignment,
                                  double pressure,
                                  const Pose2& base_pose = {});

// Strict ordering used to pick among candidates: lower cost, then fewer
// jammed segments, then lexicographic assignment, then lower pressure.
bool PlanPrecedes(const FrontierRow& a, const FrontierRow& b);

// Errors on an empty or non-ascending grid, negative pressures, a
// non-positive tolerance, or more than kMaxPlannerSegments segments.
absl::StatusOr<PlanResult> PlanToTarget(const RobotSpec& spec, Vec2 target,
                                        const std::vector<double>& pressure_grid,
                                        double tolerance,
                                        const PlannerOptions& options = {});

// Tip positions over every assignment and `sampling` pressures per grid
// interval (plus the last grid point), ordered by assignment then pressure.
absl::StatusOr<std::vector<Vec2>> ReachableSet(
    const RobotSpec& spec, const std::vector<double>& pressure_grid,
    int sampling, const Pose2& base_pose = {});

// Script that realizes a plan from a fresh simulation: jam the chosen
// sides, pressurize, then grow to the full length.
std::vector<Command> PlanToCommands(const RobotSpec& spec, const Plan& plan);

struct RolloutCheck {
  bool collision_free = true;
  std::vector<Event> events;
  Pose2 final_tip;
};

// Replays PlanToCommands through the growth simulation; any blocked or
// deflected event, or lingering contact, marks the plan as colliding.
absl::StatusOr<RolloutCheck> CheckPlanRollout(const SimContext& ctx,
                                              const Plan& plan);

// Obstacle-aware planning as a filter: candidate assignments are refined in
// order of their grid cost and the first collision-free one within tolerance
// is returned. `reachable` is false when none qualifies; `best` is then the
// unfiltered optimum.
absl::StatusOr<PlanResult> PlanCollisionFree(
    const SimContext& ctx, Vec2 target,
    const std::vector<double>& pressure_grid, double tolerance,
    const PlannerOptions& options = {});

}  // namespace vinesim

#endif  // VINESIM_PLANNER_H_
