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
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "vinesim/material.h"

namespace vinesim {

double CapstanForce(const JammingUnit& unit, double bend_angle) {
  return unit.k_theta * std::exp(unit.mu * bend_angle);
}

absl::StatusOr<HoldingForce> CriticalForce(const JammingUnit& unit,
                                           double bend_angle) {
  if (!(bend_angle >= 0.0)) {
    return absl::InvalidArgumentError("bend angle must be non-negative");
  }
  if (unit.state == JamState::kReleased) return HoldingForce{0.0, true};
  return HoldingForce{CapstanForce(unit, bend_angle), false};
}

bool Holds(const JammingUnit& unit, double bend_angle, double tension) {
  if (unit.state != JamState::kJammed) return false;
  absl::StatusOr<HoldingForce> fc = CriticalForce(unit, bend_angle);
  return fc.ok() && tension <= fc->force;
}

JammingUnit SetState(JammingUnit unit, JamState state) {
  unit.state = state;
  return unit;
}

JamState DefaultStateUnderPressure(double body_pressure) {
  return body_pressure > 0.0 ? JamState::kJammed : JamState::kReleased;
}

absl::StatusOr<CapstanFit> FitCapstan(std::span<const CapstanSample> samples) {
  if (samples.size() < 2) {
    return absl::InvalidArgumentError("capstan fit needs at least 2 samples");
  }
  std::vector<Point2> log_points;
  log_points.reserve(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].force > 0.0)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "capstan sample ", i, " has non-positive force ", samples[i].force));
    }
    log_points.push_back({samples[i].angle, std::log(samples[i].force)});
  }
  absl::StatusOr<LinearFit> line = FitLinear(log_points);
  if (!line.ok()) {
    return absl::InvalidArgumentError(
        "capstan fit needs at least two distinct angles; mu is undefined");
  }
  return CapstanFit{std::exp(line->intercept), line->slope, line->r_squared};
}

}  // namespace vinesim
