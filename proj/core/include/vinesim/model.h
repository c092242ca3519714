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

// Shared domain types for the vine robot: skin material, jamming brakes,
// robot geometry and state, and the piecewise-constant-curvature backbone.
// All quantities are SI.

#ifndef VINESIM_MODEL_H_
#define VINESIM_MODEL_H_

#include <optional>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace vinesim {

// Planar robot: a brake can sit on either side of the bending plane.
enum class Side { kNone, kLeft, kRight };

enum class JamState { kReleased, kJammed };

const char* SideName(Side side);
const char* JamStateName(JamState state);

// +1 for Left (counter-clockwise), -1 for Right, 0 for None.
constexpr int SideSign(Side side) {
  return side == Side::kLeft ? 1 : (side == Side::kRight ? -1 : 0);
}

constexpr Side Mirror(Side side) {
  return side == Side::kLeft    ? Side::kRight
         : side == Side::kRight ? Side::kLeft
                                : Side::kNone;
}

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;  // rad, counter-clockwise from +x

  Vec2 position() const { return {x, y}; }
  friend bool operator==(const Pose2&, const Pose2&) = default;
};

// Wrinkled TPU/Dyneema laminate. Axially it is soft while the wrinkles
// unfold and stiff once they are taut; circumferentially it has no
// wrinkles and is stiff throughout.
struct SkinMaterial {
  double axial_modulus_soft = 1.98e6;   // Pa
  double axial_modulus_taut = 879.1e6;  // Pa
  double circ_modulus = 879.1e6;        // Pa
  double wrinkle_strain = 1.2;          // strain where wrinkles pull taut
  double thickness = 159e-6;            // m, 52 + 65 + 42 um stack
  double prestretch_coeff = 0.6;        // max extension per unit pre-stretch
  // Tube vs flat-sheet extensibility factor applied to the pre-stretch law.
  double tube_derating = 1.0;

  double AnisotropyRatio() const { return circ_modulus / axial_modulus_soft; }
  friend bool operator==(const SkinMaterial&, const SkinMaterial&) = default;
};

// Minimum circumferential/axial stiffness ratio needed to reach a bend
// radius of one body diameter with under 5% radial swelling.
inline constexpr double kMinAnisotropyRatio = 20.0;

// Layer-jamming locking body. When released, its sliding layers still
// resist with capstan friction F = k_theta * exp(mu * theta).
struct JammingUnit {
  double k_theta = 2.0;  // N, placeholder calibration
  double mu = 0.3;       // placeholder calibration
  JamState state = JamState::kJammed;
  double overlap_length = 0.150;  // m

  friend bool operator==(const JammingUnit&, const JammingUnit&) = default;
};

struct SideSet {
  bool left = true;
  bool right = true;

  bool Contains(Side side) const {
    return side == Side::kLeft ? left : (side == Side::kRight ? right : false);
  }
  friend bool operator==(const SideSet&, const SideSet&) = default;
};

struct SegmentSpec {
  double rest_length = 0.100;  // m, depressurized length
  SideSet jam_sides;

  friend bool operator==(const SegmentSpec&, const SegmentSpec&) = default;
};

struct RobotSpec {
  double radius = 0.016;  // m
  std::vector<SegmentSpec> segments;
  SkinMaterial skin;
  JammingUnit jamming_left;
  JammingUnit jamming_right;
  // Axial load-bearing wall area. Defaults to the full tube wall 2*pi*r*t.
  std::optional<double> film_area;

  // Valid only on a spec returned by ValidateSpec.
  double FilmArea() const { return film_area.value_or(0.0); }
  const JammingUnit& Jamming(Side side) const {
    return side == Side::kRight ? jamming_right : jamming_left;
  }
  double TotalRestLength() const;

  friend bool operator==(const RobotSpec&, const RobotSpec&) = default;
};

// 32 mm diameter robot with two 100 mm segments and bench-default skin and
// jamming constants. Not yet validated (film_area unset).
RobotSpec DefaultRobotSpec(int num_segments = 2);

// Checks every invariant and fills film_area when absent. Idempotent.
absl::StatusOr<RobotSpec> ValidateSpec(RobotSpec spec);

struct SegmentState {
  double strain = 0.0;  // outer-side strain
  Side bend_side = Side::kNone;
  JamState left = JamState::kReleased;
  JamState right = JamState::kReleased;

  JamState Jam(Side side) const {
    return side == Side::kRight ? right : left;
  }
  // The single jammed side, or kNone when zero or two sides are jammed.
  Side SoleJammedSide() const;

  friend bool operator==(const SegmentState&, const SegmentState&) = default;
};

struct RobotState {
  double body_pressure = 0.0;  // Pa
  std::vector<SegmentState> segments;
  double everted_length = 0.0;  // m of centerline

  friend bool operator==(const RobotState&, const RobotState&) = default;
};

enum class ArcKind {
  kStraight,
  kBent,
  // Zero-length heading change where the body buckles against a contact.
  kKink,
};

struct Arc {
  ArcKind kind = ArcKind::kStraight;
  double inner_radius = 0.0;  // m, kBent only
  double angle = 0.0;         // rad >= 0, kBent and kKink
  Side side = Side::kNone;    // kBent and kKink
  double length = 0.0;        // m, kStraight only

  static Arc Straight(double length);
  static Arc Bent(double inner_radius, double angle, Side side);
  static Arc Kink(double angle, Side side);

  double SignedAngle() const { return SideSign(side) * angle; }
  double CenterlineLength(double tube_radius) const;
  Arc Mirrored() const;

  friend bool operator==(const Arc&, const Arc&) = default;
};

struct ArcChain {
  std::vector<Arc> arcs;
  Pose2 base_pose;
  double tube_radius = 0.016;  // m; bent centerlines run at R + tube_radius

  double CenterlineLength() const;
  friend bool operator==(const ArcChain&, const ArcChain&) = default;
};

// Fabric pneumatic artificial muscle baseline (contracting one side).
struct FpamSpec {
  double muscle_radius = 0.006;    // m
  double a_coeff = 3.0;
  double b_coeff = 1.0;
  double muscle_pressure = 60e3;  // Pa

  friend bool operator==(const FpamSpec&, const FpamSpec&) = default;
};

absl::StatusOr<FpamSpec> ValidateFpam(FpamSpec fpam);

}  // namespace vinesim

#endif  // VINESIM_MODEL_H_
