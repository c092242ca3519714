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

#include "vinesim/statics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "vinesim/jamming.h"
#include "vinesim/kinematics.h"
#include "vinesim/material.h"

namespace vinesim {
namespace {

constexpr double kPi = std::numbers::pi;
// Bisection stops once the strain bracket is this narrow.
constexpr double kStrainResolution = 1e-16;
constexpr int kMaxBracketDoublings = 64;

struct Root {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
};

// f increasing with f(lo) < 0 < f(hi).
template <typename F>
Root Bisect(F&& f, double lo, double hi, int max_iterations) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  int it = 0;
  while (it < max_iterations && hi - lo > kStrainResolution) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    ++it;
    if (f_mid == 0.0) return {mid, 0.0, it};
    if (f_mid < 0.0) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  if (std::abs(f_lo) <= std::abs(f_hi)) return {lo, f_lo, it};
  return {hi, f_hi, it};
}

Side Opposite(Side side) { return Mirror(side); }

}  // namespace

double EquilibriumSolution::InnerRadius() const {
  if (arc.kind != ArcKind::kBent) return std::numeric_limits<double>::infinity();
  return arc.inner_radius;
}

double EquilibriumSolution::Curvature() const {
  if (arc.kind != ArcKind::kBent) return 0.0;
  return 1.0 / arc.inner_radius;
}

absl::StatusOr<double> ElongationStrain(const RobotSpec& spec,
                                        double pressure) {
  if (!(pressure >= 0.0)) {
    return absl::InvalidArgumentError("pressure must be non-negative");
  }
  const double r = spec.radius;
  return StrainAtStress(spec.skin, pressure * kPi * r * r / spec.FilmArea());
}

double BendMomentResidual(const RobotSpec& spec, const SegmentSpec& seg,
                          double pressure, Side jammed_side, double strain) {
  const double r = spec.radius;
  const JammingUnit& sliding = spec.Jamming(Opposite(jammed_side));
  const double theta = strain * seg.rest_length / (2.0 * r);
  const double wall = spec.FilmArea() * AxialStressUnchecked(spec.skin, strain) +
                      CapstanForce(sliding, theta);
  return 2.0 * r * wall - pressure * kPi * r * r * r;
}

absl::StatusOr<EquilibriumSolution> SolveBendEquilibrium(
    const RobotSpec& spec, const SegmentSpec& seg, double pressure,
    Side jammed_side, const SolverOptions& options) {
  if (!(pressure >= 0.0)) {
    return absl::InvalidArgumentError("pressure must be non-negative");
  }
  if (jammed_side == Side::kNone) {
    return absl::InvalidArgumentError("bend equilibrium needs a jammed side");
  }
  const double r = spec.radius;
  auto residual = [&](double eps) {
    return BendMomentResidual(spec, seg, pressure, jammed_side, eps);
  };
  const double pressure_moment = pressure * kPi * r * r * r;
  const double tolerance =
      options.relative_tolerance * std::max(1.0, pressure_moment);

  EquilibriumSolution sol;
  const double at_zero = residual(0.0);
  if (at_zero >= 0.0) {
    sol.below_breakaway = true;
    sol.residual = at_zero;
    sol.arc = Arc::Straight(seg.rest_length);
    sol.wall_tension = CapstanForce(spec.Jamming(Opposite(jammed_side)), 0.0);
    return sol;
  }

  double hi = 1.0;
  int doublings = 0;
  while (residual(hi) <= 0.0) {
    hi *= 2.0;
    if (++doublings > kMaxBracketDoublings) {
      return absl::InternalError("could not bracket the bend equilibrium");
    }
  }
  const Root root = Bisect(residual, 0.0, hi, options.max_iterations);
  if (!(std::abs(root.value) <= tolerance)) {
    return absl::InternalError(absl::StrCat(
        "bend equilibrium did not converge: residual ", root.value,
        " after ", root.iterations, " iterations"));
  }
  sol.strain = root.x;
  sol.residual = root.value;
  sol.iterations = root.iterations;
  sol.arc = ArcFromStrain(sol.strain, r, seg.rest_length, jammed_side);
  sol.bend_angle = sol.arc.kind == ArcKind::kBent ? sol.arc.angle : 0.0;
  const double theta = sol.strain * seg.rest_length / (2.0 * r);
  sol.wall_tension =
      spec.FilmArea() * AxialStressUnchecked(spec.skin, sol.strain) +
      CapstanForce(spec.Jamming(Opposite(jammed_side)), theta);
  return sol;
}

absl::StatusOr<double> TipForceLengthening(const RobotSpec& spec,
                                           const SegmentSpec& seg,
                                           double pressure,
                                           double constrained_strain,
                                           double lever, Side jammed_side) {
  if (!(lever > 0.0)) {
    return absl::InvalidArgumentError("lever must be positive");
  }
  if (!(constrained_strain >= 0.0)) {
    return absl::InvalidArgumentError("constrained strain must be non-negative");
  }
  if (jammed_side == Side::kNone) jammed_side = Side::kLeft;
  return -BendMomentResidual(spec, seg, pressure, jammed_side,
                             constrained_strain) /
         lever;
}

double MuscleForce(const FpamSpec& fpam, double muscle_strain) {
  const double s = 1.0 - muscle_strain;
  return kPi * fpam.muscle_radius * fpam.muscle_radius * fpam.muscle_pressure *
         (fpam.a_coeff * s * s - fpam.b_coeff);
}

absl::StatusOr<double> TipForceFpam(const RobotSpec& spec,
                                    const FpamSpec& fpam,
                                    double body_pressure, double muscle_strain,
                                    double lever) {
  if (!(lever > 0.0)) {
    return absl::InvalidArgumentError("lever must be positive");
  }
  if (!(muscle_strain >= 0.0 && muscle_strain < 1.0)) {
    return absl::InvalidArgumentError("muscle strain must lie in [0, 1)");
  }
  const double r = spec.radius;
  return (2.0 * r * MuscleForce(fpam, muscle_strain) -
          body_pressure * kPi * r * r * r) /
         lever;
}

absl::StatusOr<FpamEquilibrium> SolveFpamContraction(
    const RobotSpec& spec, const FpamSpec& fpam, double body_pressure,
    const SolverOptions& options) {
  if (!(body_pressure >= 0.0)) {
    return absl::InvalidArgumentError("body pressure must be non-negative");
  }
  const double r = spec.radius;
  const double preload = 0.5 * body_pressure * kPi * r * r;
  // Increasing form: resisting load minus muscle force.
  auto excess = [&](double eps) {
    return preload + spec.FilmArea() * AxialStressUnchecked(spec.skin, eps) -
           MuscleForce(fpam, eps);
  };
  FpamEquilibrium eq;
  const double at_zero = excess(0.0);
  if (at_zero >= 0.0) {
    eq.muscle_force = MuscleForce(fpam, 0.0);
    eq.residual = at_zero;
    return eq;
  }
  // The muscle force vanishes at free contraction 1 - sqrt(b / a).
  const double free_strain = 1.0 - std::sqrt(fpam.b_coeff / fpam.a_coeff);
  const Root root = Bisect(excess, 0.0, free_strain, options.max_iterations);
  const double tolerance =
      options.relative_tolerance * std::max(1.0, MuscleForce(fpam, 0.0));
  if (!(std::abs(root.value) <= tolerance)) {
    return absl::InternalError("fPAM contraction did not converge");
  }
  eq.strain = root.x;
  eq.muscle_force = MuscleForce(fpam, root.x);
  eq.residual = root.value;
  return eq;
}

absl::StatusOr<std::vector<SweepPoint>> CurvatureSweep(
    const RobotSpec& spec, const SegmentSpec& seg,
    std::span<const double> pressures, const SweepMode& mode) {
  for (size_t i = 0; i < pressures.size(); ++i) {
    if (!(pressures[i] >= 0.0)) {
      return absl::InvalidArgumentError("sweep pressures must be non-negative");
    }
    if (i > 0 && pressures[i] < pressures[i - 1]) {
      return absl::InvalidArgumentError("sweep pressures must be ascending");
    }
  }
  const double r = spec.radius;
  std::vector<SweepPoint> out;
  out.reserve(pressures.size());
  for (const double p : pressures) {
    SweepPoint pt;
    pt.pressure = p;
    if (const auto* len = std::get_if<LengtheningMode>(&mode)) {
      absl::StatusOr<EquilibriumSolution> sol =
          SolveBendEquilibrium(spec, seg, p, len->jammed_side);
      if (!sol.ok()) return sol.status();
      pt.strain = sol->strain;
      pt.bend_angle = sol->bend_angle;
      pt.inner_radius = sol->InnerRadius();
      pt.curvature = sol->Curvature();
      pt.wall_tension = sol->wall_tension;
    } else {
      const FpamMode& fm = std::get<FpamMode>(mode);
      FpamSpec muscle = fm.fpam;
      muscle.muscle_pressure = p;
      absl::StatusOr<FpamEquilibrium> eq =
          SolveFpamContraction(spec, muscle, fm.body_pressure);
      if (!eq.ok()) return eq.status();
      pt.strain = eq->strain;
      pt.bend_angle = eq->strain * seg.rest_length / (2.0 * r);
      pt.curvature = eq->Curvature(r);
      pt.inner_radius = eq->strain > 0.0
                            ? 2.0 * r / eq->strain
                            : std::numeric_limits<double>::infinity();
      pt.wall_tension = eq->muscle_force;
    }
    out.push_back(pt);
  }
  return out;
}

absl::StatusOr<double> BendingStiffnessTrend(const RobotSpec& spec,
                                             double pressure, double coeff) {
  if (!(pressure >= 0.0)) {
    return absl::InvalidArgumentError("pressure must be non-negative");
  }
  const double r = spec.radius;
  return coeff * pressure * r * r * r;
}

}  // namespace vinesim
