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

#include "vinesim/kinematics.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vinesim {

Arc ArcFromStrain(double strain, double radius, double seg_length, Side side) {
  if (strain <= 0.0 || side == Side::kNone) return Arc::Straight(seg_length);
  return Arc::Bent(2.0 * radius / strain, strain * seg_length / (2.0 * radius),
                   side);
}

double StrainFromRadius(double inner_radius, double radius) {
  if (!std::isfinite(inner_radius)) return 0.0;
  return 2.0 * radius / inner_radius;
}

double StrainFromArc(const Arc& arc, double radius) {
  if (arc.kind != ArcKind::kBent) return 0.0;
  return StrainFromRadius(arc.inner_radius, radius);
}

Pose2 AdvancePose(const Pose2& start, const Arc& arc, double tube_radius,
                  double fraction) {
  Pose2 out = start;
  switch (arc.kind) {
    case ArcKind::kStraight: {
      const double d = arc.length * fraction;
      out.x += d * std::cos(start.heading);
      out.y += d * std::sin(start.heading);
      break;
    }
    case ArcKind::kBent: {
      // Chord of length 2 rho sin(theta / 2) at the mean heading.
      const double rho = arc.inner_radius + tube_radius;
      const double theta = arc.angle * fraction;
      const double sign = SideSign(arc.side);
      const double chord = 2.0 * rho * std::sin(0.5 * theta);
      const double mid = start.heading + sign * 0.5 * theta;
      out.x += chord * std::cos(mid);
      out.y += chord * std::sin(mid);
      out.heading = start.heading + sign * theta;
      break;
    }
    case ArcKind::kKink:
      out.heading = start.heading + arc.SignedAngle() * fraction;
      break;
  }
  return out;
}

std::vector<Pose2> ForwardKinematics(const ArcChain& chain) {
  std::vector<Pose2> poses;
  poses.reserve(chain.arcs.size() + 1);
  poses.push_back(chain.base_pose);
  for (const Arc& arc : chain.arcs) {
    poses.push_back(AdvancePose(poses.back(), arc, chain.tube_radius));
  }
  return poses;
}

Pose2 TipPose(const ArcChain& chain) {
  Pose2 pose = chain.base_pose;
  for (const Arc& arc : chain.arcs) {
    pose = AdvancePose(pose, arc, chain.tube_radius);
  }
  return pose;
}

std::vector<Vec2> BackbonePolyline(const ArcChain& chain, double max_seg_dev) {
  const std::vector<Pose2> poses = ForwardKinematics(chain);
  std::vector<Vec2> points;
  points.push_back(poses.front().position());
  for (size_t i = 0; i < chain.arcs.size(); ++i) {
    const Arc& arc = chain.arcs[i];
    if (arc.kind == ArcKind::kKink) continue;
    if (arc.kind == ArcKind::kBent && arc.angle > 0.0) {
      const double rho = arc.inner_radius + chain.tube_radius;
      // Sagitta rho * (1 - cos(step / 2)) bounds the chordal deviation.
      double max_step = std::numbers::pi / 2.0;
      if (max_seg_dev < rho) {
        max_step = std::min(max_step, 2.0 * std::acos(1.0 - max_seg_dev / rho));
      }
      const int n = std::max(1, static_cast<int>(std::ceil(arc.angle / max_step)));
      for (int k = 1; k < n; ++k) {
        const double f = static_cast<double>(k) / n;
        points.push_back(
            AdvancePose(poses[i], arc, chain.tube_radius, f).position());
      }
    }
    points.push_back(poses[i + 1].position());
  }
  return points;
}

ArcChain MirrorChain(const ArcChain& chain) {
  ArcChain out = chain;
  for (Arc& arc : out.arcs) arc = arc.Mirrored();
  return out;
}

ArcChain Concatenate(const ArcChain& head, const ArcChain& tail) {
  ArcChain out = head;
  out.arcs.insert(out.arcs.end(), tail.arcs.begin(), tail.arcs.end());
  return out;
}

Pose2 ReflectAcross(const Pose2& axis, const Pose2& pose) {
  const double c = std::cos(axis.heading);
  const double s = std::sin(axis.heading);
  const double dx = pose.x - axis.x;
  const double dy = pose.y - axis.y;
  const double along = dx * c + dy * s;
  const double across = -dx * s + dy * c;
  Pose2 out;
  out.x = axis.x + along * c + across * s;
  out.y = axis.y + along * s - across * c;
  out.heading = 2.0 * axis.heading - pose.heading;
  return out;
}

double WrapAngle(double angle) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double a = std::fmod(angle, kTwoPi);
  if (a <= -std::numbers::pi) a += kTwoPi;
  if (a > std::numbers::pi) a -= kTwoPi;
  return a;
}

}  // namespace vinesim
