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

#include "vinesim/geometry.h"

#include <algorithm>
#include <limits>

namespace vinesim::geom {

SegmentProjection ProjectOntoSegment(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = Dot(ab, ab);
  SegmentProjection out;
  out.t = len2 > 0.0 ? Dot(p - a, ab) / len2 : 0.0;
  out.closest = a + std::clamp(out.t, 0.0, 1.0) * ab;
  out.distance = Distance(p, out.closest);
  return out;
}

PolygonDistance DistanceToConvexPolygon(Vec2 p, std::span<const Vec2> poly) {
  const size_t n = poly.size();
  double area2 = 0.0;
  for (size_t i = 0; i < n; ++i) area2 += Cross(poly[i], poly[(i + 1) % n]);
  const double orient = area2 >= 0.0 ? 1.0 : -1.0;

  bool inside = true;
  PolygonDistance best;
  double best_d = std::numeric_limits<double>::infinity();
  size_t best_edge = 0;
  for (size_t i = 0; i < n; ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % n];
    if (orient * Cross(b - a, p - a) < 0.0) inside = false;
    const SegmentProjection proj = ProjectOntoSegment(p, a, b);
    if (proj.distance < best_d) {
      best_d = proj.distance;
      best.closest = proj.closest;
      best_edge = i;
    }
  }

  const Vec2 a = poly[best_edge];
  const Vec2 b = poly[(best_edge + 1) % n];
  const Vec2 edge = b - a;
  const double len = Norm(edge);
  // Outward edge normal for the polygon's winding.
  Vec2 edge_normal = len > 0.0 ? (orient / len) * Vec2{edge.y, -edge.x}
                               : Vec2{1.0, 0.0};
  if (inside) {
    best.signed_distance = -best_d;
    best.normal = edge_normal;
  } else {
    best.signed_distance = best_d;
    best.normal = best_d > 0.0 ? (1.0 / best_d) * (p - best.closest)
                               : edge_normal;
  }
  return best;
}

bool IsConvex(std::span<const Vec2> poly) {
  const size_t n = poly.size();
  if (n < 3) return false;
  int sign = 0;
  for (size_t i = 0; i < n; ++i) {
    const double c = Cross(poly[(i + 1) % n] - poly[i],
                           poly[(i + 2) % n] - poly[(i + 1) % n]);
    if (c == 0.0) continue;
    const int s = c > 0.0 ? 1 : -1;
    if (sign == 0) sign = s;
    if (s != sign) return false;
  }
  return sign != 0;
}

std::vector<Vec2> ConvexHull(std::span<const Vec2> points) {
  std::vector<Vec2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> hull(2 * pts.size());
  size_t k = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && Cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (size_t i = pts.size() - 1, lower = k + 1; i > 0; --i) {
    while (k >= lower &&
           Cross(hull[k - 1] - hull[k - 2], pts[i - 1] - hull[k - 2]) <= 0.0) {
      --k;
    }
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);
  return hull;
}

double SignedDistanceToHull(Vec2 p, std::span<const Vec2> hull) {
  if (hull.empty()) return std::numeric_limits<double>::infinity();
  if (hull.size() == 1) return Distance(p, hull[0]);
  if (hull.size() == 2) return ProjectOntoSegment(p, hull[0], hull[1]).distance;
  return DistanceToConvexPolygon(p, hull).signed_distance;
}

}  // namespace vinesim::geom
