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
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>

#include "absl/strings/str_cat.h"
#include "vinesim/geometry.h"
#include "vinesim/kinematics.h"
#include "vinesim/statics.h"
#include "vinesim/units.h"

namespace vinesim {
namespace {

using geom::Distance;
using geom::Dot;
using geom::Norm;
using geom::operator+;
using geom::operator-;
using geom::operator*;

// Growth stops this close to the requested length.
constexpr double kLengthEpsilon = 1e-12;

std::string Num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void Log(SimState& s, std::string kind, std::string detail) {
  s.events.push_back({s.tick, std::move(kind), std::move(detail)});
}

bool InGap(const Gap& gap, Vec2 p) {
  return geom::ProjectOntoSegment(p, gap.p1, gap.p2).distance <=
         0.5 * gap.width;
}

struct TipHit {
  int obstacle = -1;
  geom::PolygonDistance where;
  double penetration = 0.0;
};

// Worst obstacle penetration of a body sample at `p`, if any exceeds `tol`.
std::optional<TipHit> ObstacleHit(const SimContext& ctx, Vec2 p, double tol) {
  for (const Gap& gap : ctx.env.gaps) {
    if (GapPassable(ctx.spec, gap.width, ctx.config.squeeze_ratio) &&
        InGap(gap, p)) {
      return std::nullopt;
    }
  }
  std::optional<TipHit> worst;
  for (size_t i = 0; i < ctx.env.obstacles.size(); ++i) {
    const auto d =
        geom::DistanceToConvexPolygon(p, ctx.env.obstacles[i].vertices);
    const double pen = ctx.spec.radius - d.signed_distance;
    if (pen > tol && (!worst || pen > worst->penetration)) {
      worst = TipHit{static_cast<int>(i), d, pen};
    }
  }
  return worst;
}

std::optional<int> BlockingGap(const SimContext& ctx, Vec2 p) {
  for (size_t i = 0; i < ctx.env.gaps.size(); ++i) {
    const Gap& gap = ctx.env.gaps[i];
    if (!GapPassable(ctx.spec, gap.width, ctx.config.squeeze_ratio) &&
        InGap(gap, p)) {
      return static_cast<int>(i);
    }
  }
  return std::nullopt;
}

// Full pressurized shape of every segment for the robot's current pressure
// and brake states; updates strain and bend side in place.
absl::StatusOr<std::vector<Arc>> Reequilibrate(const SimContext& ctx,
                                               RobotState& robot) {
  std::vector<Arc> arcs;
  arcs.reserve(robot.segments.size());
  for (size_t i = 0; i < robot.segments.size(); ++i) {
    SegmentState& st = robot.segments[i];
    absl::StatusOr<SegmentShapeResult> shape =
        SegmentShape(ctx.spec, ctx.spec.segments[i], robot.body_pressure,
                     st.left, st.right);
    if (!shape.ok()) return shape.status();
    st.strain = shape->strain;
    st.bend_side = shape->bend_side;
    arcs.push_back(shape->arc);
  }
  return arcs;
}

Arc PartialArc(const Arc& arc, double fraction) {
  switch (arc.kind) {
    case ArcKind::kStraight:
      return Arc::Straight(arc.length * fraction);
    case ArcKind::kBent:
      return Arc::Bent(arc.inner_radius, arc.angle * fraction, arc.side);
    case ArcKind::kKink:
      break;
  }
  return arc;
}

double MaxPenetration(const std::vector<ContactRecord>& contacts) {
  double worst = 0.0;
  for (const auto& c : contacts) worst = std::max(worst, c.penetration);
  return worst;
}

void CheckTargets(const SimContext& ctx, SimState& s, Vec2 tip) {
  for (size_t i = 0; i < ctx.env.targets.size(); ++i) {
    if (s.targets_reached[i]) continue;
    if (Distance(tip, ctx.env.targets[i]) <= ctx.config.target_tolerance) {
      s.targets_reached[i] = true;
      Log(s, "target-reached", absl::StrCat("target=", i));
    }
  }
}

void Rebuild(const SimContext& ctx, SimState& s) {
  s.chain = BuildEvertedChain(s.segment_arcs, s.robot.everted_length, s.kinks,
                              ctx.config.base_pose, ctx.spec.radius);
  s.contacts = Collide(s.chain, ctx.spec, ctx.env, ctx.config);
}

// Re-equilibrates after a pressure or brake change. A shape that would push
// the body into an obstacle is refused and the previous state kept.
absl::StatusOr<SimState> ApplyShapeChange(const SimContext& ctx,
                                          const SimState& before,
                                          SimState after,
                                          absl::string_view what) {
  absl::StatusOr<std::vector<Arc>> arcs = Reequilibrate(ctx, after.robot);
  if (!arcs.ok()) return arcs.status();
  after.segment_arcs = *std::move(arcs);
  const double capacity = after.Capacity(ctx.spec.radius);
  after.robot.everted_length = std::min(after.robot.everted_length, capacity);
  while (!after.kinks.empty() &&
         after.kinks.back().arclength > after.robot.everted_length) {
    after.kinks.pop_back();
  }
  Rebuild(ctx, after);
  if (MaxPenetration(after.contacts) > ctx.config.contact_tolerance &&
      MaxPenetration(after.contacts) > MaxPenetration(before.contacts)) {
    SimState refused = before;
    refused.tick = after.tick;
    Log(refused, "blocked", absl::StrCat("reason=shape-collision cmd=", what));
    return refused;
  }
  CheckTargets(ctx, after, TipPose(after.chain).position());
  return after;
}

absl::StatusOr<SimState> ApplyGrow(const SimContext& ctx, SimState s,
                                   double length) {
  const double r = ctx.spec.radius;
  if (s.robot.body_pressure <= 0.0) {
    Log(s, "stalled", "reason=no-pressure");
    return s;
  }
  const double start = s.robot.everted_length;
  double goal = start + length;
  const double capacity = s.Capacity(r);
  bool exhausted = false;
  if (goal > capacity) {
    goal = capacity;
    exhausted = true;
  }
  std::vector<bool> deflect_logged(ctx.env.obstacles.size(), false);
  const double tol = ctx.config.contact_tolerance;

  int64_t k = 0;
  bool retried = false;
  std::string blocked_reason;
  while (s.robot.everted_length < goal - kLengthEpsilon) {
    const double next =
        std::min(goal, start + static_cast<double>(k + 1) * ctx.config.grow_substep);
    const ArcChain trial =
        BuildEvertedChain(s.segment_arcs, next, s.kinks, ctx.config.base_pose, r);
    const Pose2 tip = TipPose(trial);
    const Vec2 p = tip.position();

    if (std::optional<int> g = BlockingGap(ctx, p)) {
      blocked_reason = absl::StrCat("reason=gap-too-narrow gap=", *g);
      break;
    }
    if (std::optional<TipHit> hit = ObstacleHit(ctx, p, tol)) {
      const Vec2 d = geom::Heading(tip.heading);
      const Vec2 n = hit->where.normal;
      const double incidence = std::acos(std::clamp(-Dot(d, n), -1.0, 1.0));
      if (retried || incidence <= ctx.config.deflect_threshold) {
        blocked_reason = absl::StrCat(retried ? "reason=wedged" : "reason=head-on",
                                      " obstacle=", hit->obstacle);
        break;
      }
      // Buckle at the current tip so the body continues along the surface.
      const Vec2 t = d - Dot(d, n) * n;
      const double turn = std::atan2(geom::Cross(d, t), Dot(d, t));
      s.kinks.push_back({s.robot.everted_length, std::abs(turn),
                         turn >= 0.0 ? Side::kLeft : Side::kRight});
      if (!deflect_logged[hit->obstacle]) {
        deflect_logged[hit->obstacle] = true;
        Log(s, "deflected", absl::StrCat("obstacle=", hit->obstacle));
      }
      retried = true;
      continue;
    }

    bool mass_blocked = false;
    for (size_t i = 0; i < ctx.env.masses.size(); ++i) {
      const PushableMass& m = ctx.env.masses[i];
      const Vec2 c = s.mass_positions[i];
      const double dist = Distance(p, c);
      const double overlap = r + m.radius - dist;
      if (overlap <= tol) continue;
      if (!CanPush(ctx.spec, s.robot.body_pressure, m.mass, m.friction_coeff)) {
        blocked_reason = absl::StrCat("reason=mass-too-heavy mass=", i);
        mass_blocked = true;
        break;
      }
      const Vec2 dir = dist > 0.0 ? (1.0 / dist) * (c - p)
                                  : geom::Heading(tip.heading);
      s.mass_positions[i] = c + overlap * dir;
      if (!s.mass_pushed[i]) {
        s.mass_pushed[i] = true;
        Log(s, "mass-pushed", absl::StrCat("mass=", i));
      }
    }
    if (mass_blocked) break;

    retried = false;
    ++k;
    s.robot.everted_length = next;
    for (size_t i = 0; i < ctx.env.gaps.size(); ++i) {
      const Gap& gap = ctx.env.gaps[i];
      if (InGap(gap, p)) s.gaps_entered[i] = true;
      if (s.gaps_entered[i] && !s.gaps_passed[i] &&
          geom::ProjectOntoSegment(p, gap.p1, gap.p2).t > 1.0) {
        s.gaps_passed[i] = true;
        Log(s, "gap-passed", absl::StrCat("gap=", i));
      }
    }
    CheckTargets(ctx, s, p);
  }

  if (!blocked_reason.empty()) {
    Log(s, "blocked",
        absl::StrCat(blocked_reason, " everted_mm=",
                     Num(units::MToMm(s.robot.everted_length))));
  } else if (exhausted) {
    Log(s, "material-exhausted",
        absl::StrCat("everted_mm=", Num(units::MToMm(s.robot.everted_length))));
  }
  Rebuild(ctx, s);
  return s;
}

}  // namespace

absl::Status ValidateEnvironment(const Environment& env) {
  for (size_t i = 0; i < env.obstacles.size(); ++i) {
    if (!geom::IsConvex(env.obstacles[i].vertices)) {
      return absl::InvalidArgumentError(
          absl::StrCat("obstacles[", i, "] must be a convex polygon"));
    }
  }
  for (size_t i = 0; i < env.gaps.size(); ++i) {
    if (!(env.gaps[i].width > 0.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("gaps[", i, "].width must be positive"));
    }
  }
  for (size_t i = 0; i < env.masses.size(); ++i) {
    const PushableMass& m = env.masses[i];
    if (!(m.mass > 0.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("masses[", i, "].mass must be positive"));
    }
    if (!(m.friction_coeff >= 0.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("masses[", i, "].friction_coeff must be non-negative"));
    }
    if (!(m.radius > 0.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("masses[", i, "].radius must be positive"));
    }
  }
  return absl::OkStatus();
}

double SimState::Capacity(double tube_radius) const {
  double total = 0.0;
  for (const Arc& arc : segment_arcs) total += arc.CenterlineLength(tube_radius);
  return total;
}

bool SimState::AllTargetsReached() const {
  return std::all_of(targets_reached.begin(), targets_reached.end(),
                     [](bool b) { return b; });
}

absl::StatusOr<SimContext> MakeSimContext(const RobotSpec& spec,
                                          const Environment& env,
                                          const SimConfig& config) {
  absl::StatusOr<RobotSpec> valid = ValidateSpec(spec);
  if (!valid.ok()) return valid.status();
  if (absl::Status s = ValidateEnvironment(env); !s.ok()) return s;
  if (!(config.squeeze_ratio > 0.0 && config.squeeze_ratio <= 1.0)) {
    return absl::InvalidArgumentError("squeeze_ratio must lie in (0, 1]");
  }
  if (!(config.grow_substep > 0.0)) {
    return absl::InvalidArgumentError("grow_substep must be positive");
  }
  if (!(config.contact_tolerance >= 0.0) || !(config.target_tolerance >= 0.0) ||
      !(config.polyline_deviation > 0.0)) {
    return absl::InvalidArgumentError("tolerances must be non-negative");
  }
  if (!(config.initial_pressure >= 0.0)) {
    return absl::InvalidArgumentError("initial pressure must be non-negative");
  }
  return SimContext{*std::move(valid), env, config};
}

absl::StatusOr<SimState> InitialState(const SimContext& ctx) {
  SimState s;
  s.robot.body_pressure = ctx.config.initial_pressure;
  s.robot.segments.resize(ctx.spec.segments.size());
  for (size_t i = 0; i < s.robot.segments.size(); ++i) {
    const SideSet& avail = ctx.spec.segments[i].jam_sides;
    SegmentState& st = s.robot.segments[i];
    st.left = avail.left ? ctx.config.initial_jam : JamState::kReleased;
    st.right = avail.right ? ctx.config.initial_jam : JamState::kReleased;
  }
  absl::StatusOr<std::vector<Arc>> arcs = Reequilibrate(ctx, s.robot);
  if (!arcs.ok()) return arcs.status();
  s.segment_arcs = *std::move(arcs);
  for (const PushableMass& m : ctx.env.masses) s.mass_positions.push_back(m.position);
  s.mass_pushed.assign(ctx.env.masses.size(), false);
  s.targets_reached.assign(ctx.env.targets.size(), false);
  s.gaps_entered.assign(ctx.env.gaps.size(), false);
  s.gaps_passed.assign(ctx.env.gaps.size(), false);
  Rebuild(ctx, s);
  return s;
}

absl::StatusOr<SimState> Step(const SimContext& ctx, const SimState& state,
                              const Command& cmd) {
  SimState next = state;
  next.tick = state.tick + 1;

  if (const auto* c = std::get_if<command::SetPressure>(&cmd)) {
    if (!(c->pressure >= 0.0)) {
      return absl::InvalidArgumentError("pressure must be non-negative");
    }
    next.robot.body_pressure = c->pressure;
    return ApplyShapeChange(ctx, state, std::move(next), "SetPressure");
  }
  if (const auto* c = std::get_if<command::SetJam>(&cmd)) {
    if (c->segment < 0 ||
        c->segment >= static_cast<int>(ctx.spec.segments.size())) {
      return absl::OutOfRangeError(
          absl::StrCat("segment ", c->segment, " does not exist"));
    }
    if (!ctx.spec.segments[c->segment].jam_sides.Contains(c->side)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "segment ", c->segment, " has no ", SideName(c->side), " brake"));
    }
    SegmentState& st = next.robot.segments[c->segment];
    (c->side == Side::kLeft ? st.left : st.right) = c->state;
    return ApplyShapeChange(ctx, state, std::move(next), "SetJam");
  }
  if (const auto* c = std::get_if<command::Grow>(&cmd)) {
    if (!(c->length >= 0.0)) {
      return absl::InvalidArgumentError("grow length must be non-negative");
    }
    return ApplyGrow(ctx, std::move(next), c->length);
  }
  const auto& c = std::get<command::Retract>(cmd);
  if (!(c.length >= 0.0)) {
    return absl::InvalidArgumentError("retract length must be non-negative");
  }
  next.robot.everted_length =
      std::max(0.0, next.robot.everted_length - c.length);
  while (!next.kinks.empty() &&
         next.kinks.back().arclength > next.robot.everted_length) {
    next.kinks.pop_back();
  }
  Rebuild(ctx, next);
  return next;
}

absl::StatusOr<SegmentShapeResult> SegmentShape(const RobotSpec& spec,
                                                const SegmentSpec& seg,
                                                double pressure,
                                                JamState left,
                                                JamState right) {
  const bool l = left == JamState::kJammed;
  const bool r = right == JamState::kJammed;
  SegmentShapeResult out;
  if (l != r) {
    const Side side = l ? Side::kLeft : Side::kRight;
    absl::StatusOr<EquilibriumSolution> sol =
        SolveBendEquilibrium(spec, seg, pressure, side);
    if (!sol.ok()) return sol.status();
    out.strain = sol->strain;
    out.bend_side = sol->strain > 0.0 ? side : Side::kNone;
    out.arc = sol->arc;
  } else if (!l) {
    absl::StatusOr<double> eps = ElongationStrain(spec, pressure);
    if (!eps.ok()) return eps.status();
    out.strain = *eps;
    out.arc = Arc::Straight(seg.rest_length * (1.0 + *eps));
  } else {
    out.arc = Arc::Straight(seg.rest_length);
  }
  return out;
}

bool GapPassable(const RobotSpec& spec, double gap_width,
                 double squeeze_ratio) {
  return gap_width >= squeeze_ratio * 2.0 * spec.radius;
}

double AxialTipForce(const RobotSpec& spec, double pressure) {
  return pressure * std::numbers::pi * spec.radius * spec.radius;
}

bool CanPush(const RobotSpec& spec, double pressure, double mass,
             double friction_coeff) {
  return AxialTipForce(spec, pressure) >=
         friction_coeff * mass * units::kGravity;
}

std::vector<ContactRecord> Collide(const ArcChain& chain,
                                   const RobotSpec& spec,
                                   const Environment& env,
                                   const SimConfig& config) {
  std::vector<ContactRecord> out;
  if (chain.arcs.empty()) return out;
  const std::vector<Vec2> samples =
      BackbonePolyline(chain, config.polyline_deviation);
  for (size_t s = 0; s < samples.size(); ++s) {
    const Vec2 p = samples[s];
    bool exempt = false;
    for (size_t g = 0; g < env.gaps.size(); ++g) {
      if (!InGap(env.gaps[g], p)) continue;
      if (GapPassable(spec, env.gaps[g].width, config.squeeze_ratio)) {
        exempt = true;
      } else {
        out.push_back({static_cast<int>(s), ContactKind::kGap,
                       static_cast<int>(g), p, spec.radius});
        exempt = true;
      }
      break;
    }
    if (exempt) continue;
    for (size_t i = 0; i < env.obstacles.size(); ++i) {
      const auto d = geom::DistanceToConvexPolygon(p, env.obstacles[i].vertices);
      const double pen = spec.radius - d.signed_distance;
      if (pen > 0.0) {
        out.push_back({static_cast<int>(s), ContactKind::kObstacle,
                       static_cast<int>(i), d.closest, pen});
      }
    }
  }
  return out;
}

ArcChain BuildEvertedChain(const std::vector<Arc>& segment_arcs,
                           double everted_length,
                           const std::vector<PassiveKink>& kinks,
                           const Pose2& base_pose, double tube_radius) {
  ArcChain chain;
  chain.base_pose = base_pose;
  chain.tube_radius = tube_radius;
  size_t k = 0;
  double s = 0.0;
  auto emit_piece = [&](const Arc& arc, double length, double from, double to) {
    if (to > from && length > 0.0) {
      chain.arcs.push_back(PartialArc(arc, (to - from) / length));
    }
  };
  for (const Arc& arc : segment_arcs) {
    if (s >= everted_length) break;
    const double length = arc.CenterlineLength(tube_radius);
    const double end = std::min(s + length, everted_length);
    double pos = s;
    while (k < kinks.size() && kinks[k].arclength <= end) {
      emit_piece(arc, length, pos, kinks[k].arclength);
      chain.arcs.push_back(Arc::Kink(kinks[k].angle, kinks[k].side));
      pos = std::max(pos, kinks[k].arclength);
      ++k;
    }
    if (end - s >= length) {
      if (pos == s) {
        chain.arcs.push_back(arc);
      } else {
        emit_piece(arc, length, pos, end);
      }
    } else {
      emit_piece(arc, length, pos, end);
    }
    s += length;
  }
  for (; k < kinks.size() && kinks[k].arclength <= everted_length; ++k) {
    chain.arcs.push_back(Arc::Kink(kinks[k].angle, kinks[k].side));
  }
  return chain;
}

std::string FormatEventLog(const std::vector<Event>& events) {
  std::string out = "tick,event,detail\n";
  for (const Event& e : events) {
    absl::StrAppend(&out, e.tick, ",", e.kind, ",", e.detail, "\n");
  }
  return out;
}

}  // namespace vinesim
