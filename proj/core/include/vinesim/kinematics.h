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

// Arc geometry of one bent segment and planar piecewise-constant-curvature
// forward kinematics.
//
// For a segment of inner (locked) side length l whose outer side stretches by
// strain eps, l = R * theta and l * (1 + eps) = (R + 2r) * theta, so
//   R = 2r / eps,  theta = eps * l / (2r).
// R is the inner-wall radius; the centerline runs at R + r.

#ifndef VINESIM_KINEMATICS_H_
#define VINESIM_KINEMATICS_H_

#include <vector>

#include "vinesim/model.h"

namespace vinesim {

// Zero strain yields Arc::Straight(seg_length).
Arc ArcFromStrain(double strain, double radius, double seg_length, Side side);

// eps = 2r / R.
double StrainFromRadius(double inner_radius, double radius);
// 0 for straight arcs and kinks.
double StrainFromArc(const Arc& arc, double radius);

// Pose after travelling `fraction` of the arc from `start`.
Pose2 AdvancePose(const Pose2& start, const Arc& arc, double tube_radius,
                  double fraction = 1.0);

// Poses along the chain: element 0 is the base pose, element i + 1 is the
// end of arc i, and back() is the tip.
std::vector<Pose2> ForwardKinematics(const ArcChain& chain);

Pose2 TipPose(const ArcChain& chain);

// Centerline samples with chordal deviation at most max_seg_dev. Arc end
// points are exactly the forward-kinematics positions. Kinks add no points.
std::vector<Vec2> BackbonePolyline(const ArcChain& chain, double max_seg_dev);

// Reflects every bend across the base heading line.
ArcChain MirrorChain(const ArcChain& chain);

// `head` followed by `tail`, keeping head's base pose.
ArcChain Concatenate(const ArcChain& head, const ArcChain& tail);

// Reflects `pose` across the line through `axis` along axis.heading.
Pose2 ReflectAcross(const Pose2& axis, const Pose2& pose);

// Wraps to (-pi, pi].
double WrapAngle(double angle);

}  // namespace vinesim

#endif  // VINESIM_KINEMATICS_H_
