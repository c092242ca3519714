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

// Pressure-to-shape statics of a vine robot segment.
//
// Free segment: pressure force P*pi*r^2 is carried by the skin,
//   P*pi*r^2 = A_film * sigma(eps).
// One side jammed: moment balance about the locked wall,
//   P*pi*r^3 = 2r * (A_film * sigma(eps) + K * exp(mu * theta(eps))),
// with theta(eps) = eps * l / (2r) and K, mu the capstan constants of the
// released brake on the stretching side. The locked wall carries
// A_film * sigma(eps) + K * exp(mu * theta).

#ifndef VINESIM_STATICS_H_
#define VINESIM_STATICS_H_

#include <span>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "vinesim/model.h"

namespace vinesim {

struct SolverOptions {
  double relative_tolerance = 1e-9;  // on the moment residual
  int max_iterations = 200;
};

struct EquilibriumSolution {
  double strain = 0.0;
  double bend_angle = 0.0;  // rad
  Arc arc;                  // straight when strain == 0
  double residual = 0.0;    // N*m, rhs - lhs of the moment balance
  double wall_tension = 0.0;  // N
  // Capstan friction at zero bend already balances the pressure moment.
  bool below_breakaway = false;
  int iterations = 0;

  // Inner-wall radius; +inf for a straight segment.
  double InnerRadius() const;
  // 1 / InnerRadius().
  double Curvature() const;
};

// Strain of an unjammed segment: exact inverse of the piecewise skin law.
absl::StatusOr<double> ElongationStrain(const RobotSpec& spec,
                                        double pressure);

// Signed moment residual 2r(A sigma + K e^(mu theta)) - P pi r^3 at `strain`.
// Strictly increasing in strain.
double BendMomentResidual(const RobotSpec& spec, const SegmentSpec& seg,
                          double pressure, Side jammed_side, double strain);

// Bracketing plus bisection on BendMomentResidual. `spec` must be validated.
absl::StatusOr<EquilibriumSolution> SolveBendEquilibrium(
    const RobotSpec& spec, const SegmentSpec& seg, double pressure,
    Side jammed_side, const SolverOptions& options = {});

// Perpendicular tip force of a bent segment held at `constrained_strain`,
// applied at `lever` from the base.
absl::StatusOr<double> TipForceLengthening(const RobotSpec& spec,
                                           const SegmentSpec& seg,
                                           double pressure,
                                           double constrained_strain,
                                           double lever,
                                           Side jammed_side = Side::kLeft);

// Ideal McKibben muscle force pi r_m^2 P_m (a (1 - eps)^2 - b).
double MuscleForce(const FpamSpec& fpam, double muscle_strain);

// (2r F_m(eps) - P pi r^3) / lever: body pressure opposes the muscle.
absl::StatusOr<double> TipForceFpam(const RobotSpec& spec,
                                    const FpamSpec& fpam,
                                    double body_pressure,
                                    double muscle_strain, double lever);

struct FpamEquilibrium {
  double strain = 0.0;  // contraction of the muscle side
  double muscle_force = 0.0;
  double residual = 0.0;  // N
  double Curvature(double radius) const { return strain / (2.0 * radius); }
};

// Free contraction where F_m(eps) = P pi r^2 / 2 + A_film sigma(eps).
absl::StatusOr<FpamEquilibrium> SolveFpamContraction(
    const RobotSpec& spec, const FpamSpec& fpam, double body_pressure,
    const SolverOptions& options = {});

struct LengtheningMode {
  Side jammed_side = Side::kLeft;
};

// The swept pressure drives the muscle; body pressure is held fixed.
struct FpamMode {
  FpamSpec fpam;
  double body_pressure = 10e3;  // Pa
};

using SweepMode = std::variant<LengtheningMode, FpamMode>;

struct SweepPoint {
  double pressure = 0.0;  // Pa, the actuation pressure
  double strain = 0.0;
  double bend_angle = 0.0;
  double inner_radius = 0.0;  // m, +inf when straight
  double curvature = 0.0;     // 1/m
  double wall_tension = 0.0;  // N (muscle force in fPAM mode)
};

// Pressures must be ascending and non-negative.
absl::StatusOr<std::vector<SweepPoint>> CurvatureSweep(
    const RobotSpec& spec, const SegmentSpec& seg,
    std::span<const double> pressures, const SweepMode& mode);

// Linear-in-pressure trend c_k * P * r^3 for the normalized bending
// stiffness of the straight body. c_k is uncalibrated.
inline constexpr double kDefaultStiffnessCoeff = 1.0;
absl::StatusOr<double> BendingStiffnessTrend(
    const RobotSpec& spec, double pressure,
    double coeff = kDefaultStiffnessCoeff);

}  // namespace vinesim

#endif  // VINESIM_STATICS_H_
