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

#include "vinesim/model.h"

#include <cmath>
#include <numbers>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace vinesim {
namespace {

absl::Status Violation(absl::string_view what) {
  return absl::InvalidArgumentError(what);
}

bool Finite(double v) { return std::isfinite(v); }

absl::Status CheckJamming(const JammingUnit& unit, absl::string_view which) {
  if (!Finite(unit.k_theta) || unit.k_theta <= 0.0) {
    return Violation(absl::StrCat(which, ".k_theta must be positive"));
  }
  if (!Finite(unit.mu) || unit.mu < 0.0) {
    return Violation(absl::StrCat(which, ".mu must be non-negative"));
  }
  if (!Finite(unit.overlap_length) || unit.overlap_length <= 0.0) {
    return Violation(absl::StrCat(which, ".overlap_length must be positive"));
  }
  return absl::OkStatus();
}

}  // namespace

const char* SideName(Side side) {
  switch (side) {
    case Side::kLeft:
      return "left";
    case Side::kRight:
      return "right";
    case Side::kNone:
      break;
  }
  return "none";
}

const char* JamStateName(JamState state) {
  return state == JamState::kJammed ? "jammed" : "released";
}

double RobotSpec::TotalRestLength() const {
  double total = 0.0;
  for (const SegmentSpec& seg : segments) total += seg.rest_length;
  return total;
}

RobotSpec DefaultRobotSpec(int num_segments) {
  RobotSpec spec;
  spec.segments.assign(num_segments, SegmentSpec{});
  return spec;
}

absl::StatusOr<RobotSpec> ValidateSpec(RobotSpec spec) {
  if (!Finite(spec.radius) || spec.radius <= 0.0) {
    return Violation("radius must be positive");
  }
  if (spec.segments.empty()) {
    return Violation("robot needs at least one segment");
  }
  for (size_t i = 0; i < spec.segments.size(); ++i) {
    const double l = spec.segments[i].rest_length;
    if (!Finite(l) || l <= 0.0) {
      return Violation(
          absl::StrCat("segments[", i, "].rest_length must be positive"));
    }
  }

  const SkinMaterial& skin = spec.skin;
  if (!Finite(skin.axial_modulus_soft) || skin.axial_modulus_soft <= 0.0) {
    return Violation("skin.axial_modulus_soft must be positive");
  }
  if (!Finite(skin.axial_modulus_taut) ||
      skin.axial_modulus_taut < skin.axial_modulus_soft) {
    return Violation(
        "skin.axial_modulus_taut must be at least skin.axial_modulus_soft");
  }
  if (!Finite(skin.circ_modulus) ||
      skin.circ_modulus < kMinAnisotropyRatio * skin.axial_modulus_soft) {
    return Violation(
        "skin.circ_modulus must be at least 20x skin.axial_modulus_soft");
  }
  if (!Finite(skin.wrinkle_strain) || skin.wrinkle_strain <= 0.0) {
    return Violation("skin.wrinkle_strain must be positive");
  }
  if (!Finite(skin.thickness) || skin.thickness <= 0.0) {
    return Violation("skin.thickness must be positive");
  }
  if (!Finite(skin.prestretch_coeff) || skin.prestretch_coeff <= 0.0) {
    return Violation("skin.prestretch_coeff must be positive");
  }
  if (!Finite(skin.tube_derating) || skin.tube_derating <= 0.0) {
    return Violation("skin.tube_derating must be positive");
  }

  if (absl::Status s = CheckJamming(spec.jamming_left, "jamming_left");
      !s.ok()) {
    return s;
  }
  if (absl::Status s = CheckJamming(spec.jamming_right, "jamming_right");
      !s.ok()) {
    return s;
  }

  if (!spec.film_area.has_value()) {
    spec.film_area = 2.0 * std::numbers::pi * spec.radius * skin.thickness;
  }
  if (!Finite(*spec.film_area) || *spec.film_area <= 0.0) {
    return Violation("film_area must be positive");
  }
  return spec;
}

Side SegmentState::SoleJammedSide() const {
  const bool l = left == JamState::kJammed;
  const bool r = right == JamState::kJammed;
  if (l && !r) return Side::kLeft;
  if (r && !l) return Side::kRight;
  return Side::kNone;
}

Arc Arc::Straight(double length) {
  Arc arc;
  arc.kind = ArcKind::kStraight;
  arc.length = length;
  return arc;
}

Arc Arc::Bent(double inner_radius, double angle, Side side) {
  Arc arc;
  arc.kind = ArcKind::kBent;
  arc.inner_radius = inner_radius;
  arc.angle = angle;
  arc.side = side;
  return arc;
}

Arc Arc::Kink(double angle, Side side) {
  Arc arc;
  arc.kind = ArcKind::kKink;
  arc.angle = angle;
  arc.side = side;
  return arc;
}

double Arc::CenterlineLength(double tube_radius) const {
  switch (kind) {
    case ArcKind::kStraight:
      return length;
    case ArcKind::kBent:
      return (inner_radius + tube_radius) * angle;
    case ArcKind::kKink:
      break;
  }
  return 0.0;
}

Arc Arc::Mirrored() const {
  Arc out = *this;
  out.side = Mirror(side);
  return out;
}

double ArcChain::CenterlineLength() const {
  double total = 0.0;
  for (const Arc& arc : arcs) total += arc.CenterlineLength(tube_radius);
  return total;
}

absl::StatusOr<FpamSpec> ValidateFpam(FpamSpec fpam) {
  if (!Finite(fpam.muscle_radius) || fpam.muscle_radius <= 0.0) {
    return Violation("fpam.muscle_radius must be positive");
  }
  if (!Finite(fpam.b_coeff) || fpam.b_coeff <= 0.0) {
    return Violation("fpam.b_coeff must be positive");
  }
  if (!Finite(fpam.a_coeff) || fpam.a_coeff <= fpam.b_coeff) {
    return Violation("fpam.a_coeff must exceed fpam.b_coeff");
  }
  if (!Finite(fpam.muscle_pressure) || fpam.muscle_pressure < 0.0) {
    return Violation("fpam.muscle_pressure must be non-negative");
  }
  return fpam;
}

}  // namespace vinesim
