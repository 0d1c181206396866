/* Copyright 2026 The Stepwise Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef STEPWISE_RENDER_CAMERA_H_
#define STEPWISE_RENDER_CAMERA_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "stepwise/render/geometry.h"

namespace stepwise {

struct ComposedState;

enum class ViewId { kFront, kLeft, kRight, kBack };

inline constexpr std::array<ViewId, 4> kAllViews = {
    ViewId::kFront, ViewId::kLeft, ViewId::kRight, ViewId::kBack};

std::string_view ViewName(ViewId view);
std::optional<ViewId> ParseViewId(std::string_view name);

enum class ProjectionKind { kOrthographic, kPerspective };

// World frame is Z-up. The canonical front camera sits on -Y looking toward
// +Y; left/right/back are the same rig rotated about Z.
struct Camera {
  ViewId view = ViewId::kFront;
  ProjectionKind kind = ProjectionKind::kOrthographic;
  Vec3 position;
  Vec3 target;
  Vec3 up{0, 0, 1};
  // Orthographic: half of the visible height in world units.
  double half_extent = 1.0;

  Vec3 Forward() const { return Normalized(target - position); }
  Vec3 Right() const { return Normalized(Cross(Forward(), up)); }
  Vec3 TrueUp() const { return Cross(Right(), Forward()); }
};

// Unit direction from the target toward the camera for a preset view.
Vec3 ViewDirection(ViewId view);

// Camera preset looking at `target` from `distance` away.
Camera PresetCamera(ViewId view, const Vec3& target, double half_extent,
                    double distance = 10.0);

inline constexpr double kDefaultFill = 0.8;

// Orthographic camera whose view of `reference` (normally the final
// assembly) spans `fill` of the canvas along its tighter axis; `aspect` is
// width / height. Reuse the result for every step of a trace so the scale
// does not jump between steps.
Camera FitCamera(ViewId view, const ComposedState& reference,
                 bool y_up_input = true, double fill = kDefaultFill,
                 double aspect = 1.0);

// Maps a model-space point into the Z-up world frame. OBJ assets are Y-up;
// the conversion matches Blender's OBJ importer default (x, -z, y).
Vec3 ToWorld(const Vec3& p, bool y_up_input);

}  // namespace stepwise

#endif  // STEPWISE_RENDER_CAMERA_H_
