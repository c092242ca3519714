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

#include "vinesim/planner.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "vinesim/geometry.h"
#include "vinesim/kinematics.h"

namespace vinesim {
namespace {

absl::Status ValidateGrid(const std::vector<double>& grid) {
  if (grid.empty()) return absl::InvalidArgumentError("pressure grid is empty");
  for (size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0) || !std::isfinite(grid[i])) {
      return absl::InvalidArgumentError(
          absl::StrCat("pressure grid entry ", i, " must be finite and >= 0"));
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      return absl::InvalidArgumentError("pressure grid must be ascending");
    }
  }
  return absl::OkStatus();
}

absl::Status ValidatePlannerSpec(const RobotSpec& spec) {
  if (spec.segments.empty()) {
    return absl::InvalidArgumentError("robot has no segments");
  }
  if (spec.segments.size() > kMaxPlannerSegments) {
    return absl::InvalidArgumentError(
        absl::StrCat("planner supports at most ", kMaxPlannerSegments,
                     " segments, got ", spec.segments.size()));
  }
  return absl::OkStatus();
}

int CountJammed(const std::vector<Side>& assignment) {
  return static_cast<int>(std::count_if(
      assignment.begin(), assignment.end(),
      [](Side s) { return s != Side::kNone; }));
}

absl::StatusOr<FrontierRow> Evaluate(const RobotSpec& spec,
                                     const std::vector<Side>& assignment,
                                     double pressure, Vec2 target,
                                     const Pose2& base) {
  absl::StatusOr<Pose2> tip = EvaluateTip(spec, assignment, pressure, base);
  if (!tip.ok()) return tip.status();
  return FrontierRow{assignment, pressure, *tip,
                     geom::Distance(tip->position(), target)};
}

// Golden-section search on [lo, hi]; returns the best point seen.
absl::StatusOr<FrontierRow> GoldenSection(const RobotSpec& spec,
                                          const std::vector<Side>& assignment,
                                          double lo, double hi, Vec2 target,
                                          const Pose2& base, int iterations) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  absl::StatusOr<FrontierRow> fc = Evaluate(spec, assignment, c, target, base);
  if (!fc.ok()) return fc.status();
  absl::StatusOr<FrontierRow> fd = Evaluate(spec, assignment, d, target, base);
  if (!fd.ok()) return fd.status();
  FrontierRow best = fc->cost <= fd->cost ? *fc : *fd;
  for (int i = 0; i < iterations && b - a > 1e-9; ++i) {
    if (fc->cost <= fd->cost) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = Evaluate(spec, assignment, c, target, base);
      if (!fc.ok()) return fc.status();
      if (fc->cost < best.cost) best = *fc;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = Evaluate(spec, assignment, d, target, base);
      if (!fd.ok()) return fd.status();
      if (fd->cost < best.cost) best = *fd;
    }
  }
  return best;
}

Plan MakePlan(const FrontierRow& row) {
  Plan p;
  p.assignment = row.assignment;
  p.pressure = row.pressure;
  p.predicted_tip = row.tip;
  p.cost = row.cost;
  p.grid_cost = row.cost;
  p.grid_pressure = row.pressure;
  return p;
}

// Refines the pressure of a grid optimum between its neighbouring grid
// points. Only strict improvements are taken.
absl::StatusOr<Plan> Refine(const RobotSpec& spec, const FrontierRow& row,
                            const std::vector<double>& grid, Vec2 target,
                            const PlannerOptions& options) {
  Plan plan = MakePlan(row);
  if (grid.size() < 2) return plan;
  const auto it = std::lower_bound(grid.begin(), grid.end(), row.pressure);
  const size_t i = static_cast<size_t>(it - grid.begin());
  const double lo = grid[i == 0 ? 0 : i - 1];
  const double hi = grid[std::min(i + 1, grid.size() - 1)];
  absl::StatusOr<FrontierRow> refined =
      GoldenSection(spec, row.assignment, lo, hi, target, options.base_pose,
                    options.refine_iterations);
  if (!refined.ok()) return refined.status();
  if (refined->cost < plan.cost) {
    plan.pressure = refined->pressure;
    plan.predicted_tip = refined->tip;
    plan.cost = refined->cost;
  }
  return plan;
}

// Grid evaluation of every assignment; returns the best row per assignment
// plus the global frontier.
struct GridSearch {
  std::vector<FrontierRow> per_assignment;
  std::vector<FrontierRow> frontier;
};

absl::StatusOr<GridSearch> SearchGrid(const RobotSpec& spec, Vec2 target,
                                      const std::vector<double>& grid,
                                      const PlannerOptions& options) {
  GridSearch out;
  for (const std::vector<Side>& assignment : EnumerateAssignments(spec)) {
    std::optional<FrontierRow> best;
    for (double p : grid) {
      absl::StatusOr<FrontierRow> row =
          Evaluate(spec, assignment, p, target, options.base_pose);
      if (!row.ok()) return row.status();
      if (!best || PlanPrecedes(*row, *best)) best = *row;
      if (options.record_frontier) out.frontier.push_back(*row);
    }
    out.per_assignment.push_back(*best);
  }
  return out;
}

}  // namespace

int Plan::JammedCount() const { return CountJammed(assignment); }

std::string AssignmentName(const std::vector<Side>& assignment) {
  std::string out;
  for (size_t i = 0; i < assignment.size(); ++i) {
    if (i > 0) out += '-';
    switch (assignment[i]) {
      case Side::kNone:
        out += 'N';
        break;
      case Side::kLeft:
        out += 'L';
        break;
      case Side::kRight:
        out += 'R';
        break;
    }
  }
  return out;
}

std::vector<std::vector<Side>> EnumerateAssignments(const RobotSpec& spec) {
  std::vector<std::vector<Side>> options(spec.segments.size());
  for (size_t i = 0; i < spec.segments.size(); ++i) {
    options[i].push_back(Side::kNone);
    if (spec.segments[i].jam_sides.left) options[i].push_back(Side::kLeft);
    if (spec.segments[i].jam_sides.right) options[i].push_back(Side::kRight);
  }
  std::vector<std::vector<Side>> out;
  std::vector<size_t> idx(spec.segments.size(), 0);
  while (true) {
    std::vector<Side> a(spec.segments.size());
    for (size_t i = 0; i < idx.size(); ++i) a[i] = options[i][idx[i]];
    out.push_back(std::move(a));
    // Odometer with the last segment varying fastest.
    size_t k = idx.size();
    while (k > 0) {
      --k;
      if (++idx[k] < options[k].size()) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
    if (idx.empty()) return out;
  }
}

absl::StatusOr<ArcChain> AssignmentChain(const RobotSpec& spec,
                                         const std::vector<Side>& assignment,
                                         double pressure,
                                         const Pose2& base_pose) {
  if (assignment.size() != spec.segments.size()) {
    return absl::InvalidArgumentError("assignment size must match segments");
  }
  ArcChain chain;
  chain.base_pose = base_pose;
  chain.tube_radius = spec.radius;
  for (size_t i = 0; i < assignment.size(); ++i) {
    const Side s = assignment[i];
    if (s != Side::kNone && !spec.segments[i].jam_sides.Contains(s)) {
      return absl::InvalidArgumentError(
          absl::StrCat("segment ", i, " has no ", SideName(s), " brake"));
    }
    const JamState left = s == Side::kLeft ? JamState::kJammed : JamState::kReleased;
    const JamState right =
        s == Side::kRight ? JamState::kJammed : JamState::kReleased;
    absl::StatusOr<SegmentShapeResult> shape =
        SegmentShape(spec, spec.segments[i], pressure, left, right);
    if (!shape.ok()) return shape.status();
    chain.arcs.push_back(shape->arc);
  }
  return chain;
}

absl::StatusOr<Pose2> EvaluateTip(const RobotSpec& spec,
                                  const std::vector<Side>& assignment,
                                  double pressure, const Pose2& base_pose) {
  absl::StatusOr<ArcChain> chain =
      AssignmentChain(spec, assignment, pressure, base_pose);
  if (!chain.ok()) return chain.status();
  return TipPose(*chain);
}

bool PlanPrecedes(const FrontierRow& a, const FrontierRow& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  const int ja = CountJammed(a.assignment);
  const int jb = CountJammed(b.assignment);
  if (ja != jb) return ja < jb;
  if (a.assignment != b.assignment) return a.assignment < b.assignment;
  return a.pressure < b.pressure;
}

absl::StatusOr<PlanResult> PlanToTarget(const RobotSpec& spec, Vec2 target,
                                        const std::vector<double>& pressure_grid,
                                        double tolerance,
                                        const PlannerOptions& options) {
  if (absl::Status s = ValidatePlannerSpec(spec); !s.ok()) return s;
  if (absl::Status s = ValidateGrid(pressure_grid); !s.ok()) return s;
  if (!(tolerance > 0.0)) {
    return absl::InvalidArgumentError("tolerance must be positive");
  }
  absl::StatusOr<GridSearch> grid =
      SearchGrid(spec, target, pressure_grid, options);
  if (!grid.ok()) return grid.status();
  const FrontierRow* best = &grid->per_assignment.front();
  for (const FrontierRow& row : grid->per_assignment) {
    if (PlanPrecedes(row, *best)) best = &row;
  }
  absl::StatusOr<Plan> plan = Refine(spec, *best, pressure_grid, target, options);
  if (!plan.ok()) return plan.status();
  PlanResult result;
  result.best = *std::move(plan);
  result.reachable = result.best.cost <= tolerance;
  result.frontier = std::move(grid->frontier);
  return result;
}

absl::StatusOr<std::vector<Vec2>> ReachableSet(
    const RobotSpec& spec, const std::vector<double>& pressure_grid,
    int sampling, const Pose2& base_pose) {
  if (absl::Status s = ValidatePlannerSpec(spec); !s.ok()) return s;
  if (absl::Status s = ValidateGrid(pressure_grid); !s.ok()) return s;
  if (sampling <= 0) return absl::InvalidArgumentError("sampling must be > 0");
  std::vector<double> pressures;
  for (size_t i = 0; i + 1 < pressure_grid.size(); ++i) {
    const double lo = pressure_grid[i];
    const double hi = pressure_grid[i + 1];
    for (int k = 0; k < sampling; ++k) {
      pressures.push_back(lo + (hi - lo) * k / sampling);
    }
  }
  pressures.push_back(pressure_grid.back());
  std::vector<Vec2> out;
  for (const std::vector<Side>& assignment : EnumerateAssignments(spec)) {
    for (double p : pressures) {
      absl::StatusOr<Pose2> tip = EvaluateTip(spec, assignment, p, base_pose);
      if (!tip.ok()) return tip.status();
      out.push_back(tip->position());
    }
  }
  return out;
}

std::vector<Command> PlanToCommands(const RobotSpec& spec, const Plan& plan) {
  std::vector<Command> out;
  for (size_t i = 0; i < plan.assignment.size() && i < spec.segments.size();
       ++i) {
    for (Side side : {Side::kLeft, Side::kRight}) {
      if (!spec.segments[i].jam_sides.Contains(side)) continue;
      out.push_back(command::SetJam{
          static_cast<int>(i), side,
          plan.assignment[i] == side ? JamState::kJammed : JamState::kReleased});
    }
  }
  out.push_back(command::SetPressure{plan.pressure});
  absl::StatusOr<ArcChain> chain =
      AssignmentChain(spec, plan.assignment, plan.pressure);
  const double length = chain.ok() ? chain->CenterlineLength()
                                   : spec.TotalRestLength();
  out.push_back(command::Grow{length});
  return out;
}

absl::StatusOr<RolloutCheck> CheckPlanRollout(const SimContext& ctx,
                                              const Plan& plan) {
  absl::StatusOr<SimState> state = InitialState(ctx);
  if (!state.ok()) return state.status();
  for (const Command& c : PlanToCommands(ctx.spec, plan)) {
    state = Step(ctx, *state, c);
    if (!state.ok()) return state.status();
  }
  RolloutCheck check;
  check.events = state->events;
  check.final_tip = TipPose(state->chain);
  for (const Event& e : state->events) {
    if (e.kind == "blocked" || e.kind == "deflected") check.collision_free = false;
  }
  if (!state->contacts.empty()) check.collision_free = false;
  return check;
}

absl::StatusOr<PlanResult> PlanCollisionFree(
    const SimContext& ctx, Vec2 target,
    const std::vector<double>& pressure_grid, double tolerance,
    const PlannerOptions& options) {
  PlannerOptions opts = options;
  opts.base_pose = ctx.config.base_pose;
  absl::StatusOr<PlanResult> unfiltered =
      PlanToTarget(ctx.spec, target, pressure_grid, tolerance, opts);
  if (!unfiltered.ok()) return unfiltered.status();
  absl::StatusOr<GridSearch> grid =
      SearchGrid(ctx.spec, target, pressure_grid, opts);
  if (!grid.ok()) return grid.status();
  std::vector<FrontierRow> candidates = grid->per_assignment;
  std::sort(candidates.begin(), candidates.end(), PlanPrecedes);
  PlanResult result = *std::move(unfiltered);
  result.reachable = false;
  for (const FrontierRow& row : candidates) {
    absl::StatusOr<Plan> plan = Refine(ctx.spec, row, pressure_grid, target, opts);
    if (!plan.ok()) return plan.status();
    if (plan->cost > tolerance) continue;
    absl::StatusOr<RolloutCheck> check = CheckPlanRollout(ctx, *plan);
    if (!check.ok()) return check.status();
    if (check->collision_free) {
      result.best = *std::move(plan);
      result.reachable = true;
      break;
    }
  }
  return result;
}

}  // namespace vinesim
