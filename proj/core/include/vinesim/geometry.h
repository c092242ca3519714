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

#ifndef VINESIM_GEOMETRY_H_
#define VINESIM_GEOMETRY_H_

#include <cmath>
#include <span>
#include <vector>

#include "vinesim/model.h"

namespace vinesim::geom {

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double Dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double Cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double Norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double Distance(Vec2 a, Vec2 b) { return Norm(a - b); }
inline Vec2 Heading(double angle) { return {std::cos(angle), std::sin(angle)}; }

struct SegmentProjection {
  double t = 0.0;  // unclamped parameter along a -> b
  Vec2 closest;    // clamped closest point
  double distance = 0.0;
};

SegmentProjection ProjectOntoSegment(Vec2 p, Vec2 a, Vec2 b);

struct PolygonDistance {
  // Negative inside the polygon.
  double signed_distance = 0.0;
  Vec2 closest;  // on the boundary
  Vec2 normal;   // unit, pointing out of the polygon toward p
};

// Vertices of a convex polygon in either winding order; at least 3.
PolygonDistance DistanceToConvexPolygon(Vec2 p, std::span<const Vec2> poly);

bool IsConvex(std::span<const Vec2> poly);

// Counter-clockwise hull without collinear points (Andrew's monotone chain).
std::vector<Vec2> ConvexHull(std::span<const Vec2> points);

// Signed distance from p to a counter-clockwise hull, negative inside.
// Degenerate hulls (fewer than 3 points) use the distance to the points or
// segment.
double SignedDistanceToHull(Vec2 p, std::span<const Vec2> hull);

}  // namespace vinesim::geom

#endif  // VINESIM_GEOMETRY_H_
