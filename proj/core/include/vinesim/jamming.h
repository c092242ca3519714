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

#ifndef VINESIM_JAMMING_H_
#define VINESIM_JAMMING_H_

#include <span>

#include "absl/status/statusor.h"
#include "vinesim/model.h"

namespace vinesim {

struct HoldingForce {
  double force = 0.0;     // N
  bool released = false;  // a released unit holds nothing
};

// Capstan slip threshold K_theta * exp(mu * theta). Rejects negative angles.
absl::StatusOr<HoldingForce> CriticalForce(const JammingUnit& unit,
                                           double bend_angle);

// Capstan friction of the layers regardless of lock state; this is also the
// sliding resistance a released unit offers.
double CapstanForce(const JammingUnit& unit, double bend_angle);

// True iff the unit is jammed and `tension` does not exceed its critical
// force at `bend_angle`.
bool Holds(const JammingUnit& unit, double bend_angle, double tension);

JammingUnit SetState(JammingUnit unit, JamState state);

// Body pressure squeezes the bladder, so a unit with no release pressure
// is jammed whenever the body is pressurized.
JamState DefaultStateUnderPressure(double body_pressure);

struct CapstanSample {
  double angle = 0.0;  // rad
  double force = 0.0;  // N
};

struct CapstanFit {
  double k_theta = 0.0;
  double mu = 0.0;
  double r_squared = 0.0;  // of the log-space regression
};

// log-linear least squares ln F = ln K + mu * theta.
absl::StatusOr<CapstanFit> FitCapstan(std::span<const CapstanSample> samples);

}  // namespace vinesim

#endif  // VINESIM_JAMMING_H_
