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

#include "vinesim/material.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace vinesim {
namespace {

// A second regime must at least halve the single-line residual to count.
constexpr double kRegimeImprovement = 0.5;
// Below this fraction of sum(stress^2) a single line is treated as exact.
constexpr double kExactFitFraction = 1e-18;

double SumSquares(std::span<const StressStrainSample> samples) {
  double s = 0.0;
  for (const auto& p : samples) s += p.stress * p.stress;
  return s;
}

double TotalSumSquares(std::span<const StressStrainSample> samples) {
  double mean = 0.0;
  for (const auto& p : samples) mean += p.stress;
  mean /= static_cast<double>(samples.size());
  double sst = 0.0;
  for (const auto& p : samples) sst += (p.stress - mean) * (p.stress - mean);
  return sst;
}

double RSquared(double sse, double sst) {
  if (sst <= 0.0) return sse <= 0.0 ? 1.0 : 0.0;
  return 1.0 - sse / sst;
}

}  // namespace

absl::StatusOr<double> AxialStress(const SkinMaterial& material,
                                   double strain) {
  if (!(strain >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("strain must be non-negative, got ", strain));
  }
  return AxialStressUnchecked(material, strain);
}

double TangentModulus(const SkinMaterial& material, double strain) {
  return strain < material.wrinkle_strain ? material.axial_modulus_soft
                                          : material.axial_modulus_taut;
}

absl::StatusOr<double> StrainAtStress(const SkinMaterial& m, double stress) {
  if (!(stress >= 0.0)) {
    return absl::InvalidArgumentError("stress must be non-negative");
  }
  const double knee = m.axial_modulus_soft * m.wrinkle_strain;
  if (stress <= knee) return stress / m.axial_modulus_soft;
  return m.wrinkle_strain + (stress - knee) / m.axial_modulus_taut;
}

absl::StatusOr<double> MaxExtensionFromPrestretch(double coeff,
                                                  double prestretch) {
  if (!(prestretch >= 0.0)) {
    return absl::InvalidArgumentError("prestretch must be non-negative");
  }
  return coeff * prestretch;
}

absl::StatusOr<double> TubeMaxExtension(const SkinMaterial& material,
                                        double prestretch) {
  absl::StatusOr<double> flat =
      MaxExtensionFromPrestretch(material.prestretch_coeff, prestretch);
  if (!flat.ok()) return flat.status();
  return material.tube_derating * *flat;
}

absl::StatusOr<TwoRegimeFit> FitTwoRegime(
    std::span<const StressStrainSample> samples) {
  if (samples.size() < 4) {
    return absl::InvalidArgumentError(absl::StrCat(
        "two-regime fit needs at least 4 samples, got ", samples.size()));
  }
  for (size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].strain >= 0.0) || !(samples[i].stress >= 0.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("sample ", i, " has negative strain or stress"));
    }
    if (i > 0 && !(samples[i].strain > samples[i - 1].strain)) {
      return absl::InvalidArgumentError(
          absl::StrCat("sample strains must strictly increase (sample ", i,
                       ")"));
    }
  }

  const double sst = TotalSumSquares(samples);
  const double max_strain = samples.back().strain;

  // Single line through the origin.
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : samples) {
    sxx += p.strain * p.strain;
    sxy += p.strain * p.stress;
  }
  if (sxx <= 0.0) {
    return absl::InvalidArgumentError("all sample strains are zero");
  }
  const double single_slope = sxy / sxx;
  double single_sse = 0.0;
  for (const auto& p : samples) {
    const double e = p.stress - single_slope * p.strain;
    single_sse += e * e;
  }

  TwoRegimeFit best;
  best.sse = std::numeric_limits<double>::infinity();
  for (const auto& cand : samples) {
    const double c = cand.strain;
    if (c <= 0.0 || c >= max_strain) continue;
    double suu = 0.0, suv = 0.0, svv = 0.0, sus = 0.0, svs = 0.0;
    for (const auto& p : samples) {
      const double u = std::min(p.strain, c);
      const double v = std::max(p.strain - c, 0.0);
      suu += u * u;
      suv += u * v;
      svv += v * v;
      sus += u * p.stress;
      svs += v * p.stress;
    }
    const double det = suu * svv - suv * suv;
    if (!(det > 0.0)) continue;
    const double soft = (sus * svv - svs * suv) / det;
    const double taut = (svs * suu - sus * suv) / det;
    double sse = 0.0;
    for (const auto& p : samples) {
      const double u = std::min(p.strain, c);
      const double v = std::max(p.strain - c, 0.0);
      const double e = p.stress - soft * u - taut * v;
      sse += e * e;
    }
    if (sse < best.sse) {
      best.modulus_soft = soft;
      best.modulus_taut = taut;
      best.wrinkle_strain = c;
      best.sse = sse;
    }
  }

  const bool exact_line = single_sse <= kExactFitFraction * SumSquares(samples);
  if (exact_line || !std::isfinite(best.sse) ||
      best.sse > kRegimeImprovement * single_sse) {
    TwoRegimeFit single;
    single.modulus_soft = single_slope;
    single.modulus_taut = single_slope;
    single.wrinkle_strain = max_strain;
    single.sse = single_sse;
    single.r_squared = RSquared(single_sse, sst);
    single.single_regime = true;
    return single;
  }
  best.r_squared = RSquared(best.sse, sst);
  return best;
}

absl::StatusOr<LinearFit> FitLinear(std::span<const Point2> points) {
  if (points.size() < 2) {
    return absl::InvalidArgumentError("linear fit needs at least 2 points");
  }
  const double n = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (const auto& p : points) {
    mx += p.x;
    my += p.y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& p : points) {
    sxx += (p.x - mx) * (p.x - mx);
    sxy += (p.x - mx) * (p.y - my);
    syy += (p.y - my) * (p.y - my);
  }
  if (!(sxx > 0.0)) {
    return absl::InvalidArgumentError("linear fit needs two distinct x values");
  }
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (const auto& p : points) {
    const double e = p.y - (fit.slope * p.x + fit.intercept);
    fit.sse += e * e;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - fit.sse / syy : 1.0;
  return fit;
}

absl::StatusOr<LinearFit> FitThroughOrigin(std::span<const Point2> points) {
  double sxx = 0.0, sxy = 0.0, my = 0.0;
  for (const auto& p : points) {
    sxx += p.x * p.x;
    sxy += p.x * p.y;
    my += p.y;
  }
  if (!(sxx > 0.0)) {
    return absl::InvalidArgumentError("fit through origin needs a non-zero x");
  }
  my /= static_cast<double>(points.size());
  LinearFit fit;
  fit.slope = sxy / sxx;
  double syy = 0.0;
  for (const auto& p : points) {
    const double e = p.y - fit.slope * p.x;
    fit.sse += e * e;
    syy += (p.y - my) * (p.y - my);
  }
  fit.r_squared = syy > 0.0 ? 1.0 - fit.sse / syy : 1.0;
  return fit;
}

}  // namespace vinesim
