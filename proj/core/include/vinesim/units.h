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

#ifndef VINESIM_UNITS_H_
#define VINESIM_UNITS_H_

#include <numbers>

// Everything inside the library is SI (Pa, m, N, rad, kg). Files and the
// command line use kPa, mm, g and degrees; convert only at those boundaries.
namespace vinesim::units {

inline constexpr double kGravity = 9.81;  // m/s^2

constexpr double KPaToPa(double kpa) { return kpa * 1e3; }
constexpr double PaToKPa(double pa) { return pa * 1e-3; }
constexpr double MPaToPa(double mpa) { return mpa * 1e6; }
constexpr double PaToMPa(double pa) { return pa * 1e-6; }
constexpr double MmToM(double mm) { return mm * 1e-3; }
constexpr double MToMm(double m) { return m * 1e3; }
constexpr double UmToM(double um) { return um * 1e-6; }
constexpr double MToUm(double m) { return m * 1e6; }
constexpr double Mm2ToM2(double mm2) { return mm2 * 1e-6; }
constexpr double M2ToMm2(double m2) { return m2 * 1e6; }
constexpr double GToKg(double g) { return g * 1e-3; }
constexpr double KgToG(double kg) { return kg * 1e3; }
constexpr double DegToRad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double RadToDeg(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace vinesim::units

#endif  // VINESIM_UNITS_H_
