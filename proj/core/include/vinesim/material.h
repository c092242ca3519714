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

// Two-regime axial stress-strain law of the wrinkled skin, the pre-stretch
// extensibility law, and least-squares fits from characterization data.

#ifndef VINESIM_MATERIAL_H_
#define VINESIM_MATERIAL_H_

#include <span>

#include "absl/status/statusor.h"
#include "vinesim/model.h"

namespace vinesim {

enum class LoadDirection { kLongitudinal, kTransverse };

struct StressStrainSample {
  double strain = 0.0;
  double stress = 0.0;  // Pa
  LoadDirection direction = LoadDirection::kLongitudinal;
};

// sigma = E_soft * eps below the wrinkle strain, then E_taut beyond it.
// Continuous at the breakpoint. Rejects negative strain.
absl::StatusOr<double> AxialStress(const SkinMaterial& material, double strain);

// Unchecked form for inner loops; strain must be >= 0.
inline double AxialStressUnchecked(const SkinMaterial& m, double strain) {
  if (strain <= m.wrinkle_strain) return m.axial_modulus_soft * strain;
  return m.axial_modulus_soft * m.wrinkle_strain +
         m.axial_modulus_taut * (strain - m.wrinkle_strain);
}

// d(sigma)/d(eps); the taut modulus is used at and above the breakpoint.
double TangentModulus(const SkinMaterial& material, double strain);

// Exact inverse of the axial law: the strain carrying `stress`.
absl::StatusOr<double> StrainAtStress(const SkinMaterial& material,
                                      double stress);

// Percent-extension law e = coeff * prestretch.
absl::StatusOr<double> MaxExtensionFromPrestretch(double coeff,
                                                  double prestretch);

// Same law for a formed tube, scaled by the material's tube derating.
absl::StatusOr<double> TubeMaxExtension(const SkinMaterial& material,
                                        double prestretch);

struct TwoRegimeFit {
  double modulus_soft = 0.0;
  double modulus_taut = 0.0;
  double wrinkle_strain = 0.0;
  double sse = 0.0;        // Pa^2
  double r_squared = 0.0;  // about the mean stress
  // Data did not support a second regime; modulus_taut == modulus_soft and
  // wrinkle_strain is the largest sample strain.
  bool single_regime = false;
};

// Continuous piecewise-linear least squares through the origin. The
// breakpoint is scanned over interior sample strains. Samples must be
// non-negative with strictly increasing strain; at least four are needed.
absl::StatusOr<TwoRegimeFit> FitTwoRegime(
    std::span<const StressStrainSample> samples);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double sse = 0.0;
};

// Ordinary least squares y = slope * x + intercept. Needs two distinct x.
// r_squared is 1 when y is constant and fit exactly.
absl::StatusOr<LinearFit> FitLinear(std::span<const Point2> points);

// Least squares y = slope * x (no intercept). Needs a non-zero x.
absl::StatusOr<LinearFit> FitThroughOrigin(std::span<const Point2> points);

}  // namespace vinesim

#endif  // VINESIM_MATERIAL_H_
