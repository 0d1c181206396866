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

#include "stepwise/render/camera.h"

#include <algorithm>
#include <limits>

#include "stepwise/render/state.h"

namespace stepwise {

std::string_view ViewName(ViewId view) {
  switch (view) {
    case ViewId::kFront: return "front";
    case ViewId::kLeft: return "left";
    case ViewId::kRight: return "right";
    case ViewId::kBack: return "back";
  }
  return "front";
}

std::optional<ViewId> ParseViewId(std::string_view name) {
  for (ViewId view : kAllViews) {
    if (ViewName(view) == name) return view;
  }
  return std::nullopt;
}

Vec3 ViewDirection(ViewId view) {
  switch (view) {
    case ViewId::kFront: return {0, -1, 0};
    case ViewId::kLeft: return {-1, 0, 0};
    case ViewId::kRight: return {1, 0, 0};
    case ViewId::kBack: return {0, 1, 0};
  }
  return {0, -1, 0};
}

Vec3 ToWorld(const Vec3& p, bool y_up_input) {
  return y_up_input ? Vec3{p.x, -p.z, p.y} : p;
}

Camera PresetCamera(ViewId view, const Vec3& target, double half_extent,
                    double distance) {
  Camera cam;
  cam.view = view;
  cam.kind = ProjectionKind::kOrthographic;
  cam.target = target;
  cam.position = target + ViewDirection(view) * distance;
  cam.up = {0, 0, 1};
  cam.half_extent = half_extent;
  return cam;
}

Camera FitCamera(ViewId view, const ComposedState& reference, bool y_up_input,
                 double fill, double aspect) {
  Camera probe = PresetCamera(view, {0, 0, 0}, 1.0);
  const Vec3 right = probe.Right();
  const Vec3 up = probe.TrueUp();
  const Vec3 forward = probe.Forward();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double u_min = kInf, u_max = -kInf, v_min = kInf, v_max = -kInf;
  double d_min = kInf, d_max = -kInf;
  for (const TriangleMesh& mesh : reference.meshes) {
    for (const Vec3& p : mesh.vertices) {
      const Vec3 w = ToWorld(p, y_up_input);
      u_min = std::min(u_min, Dot(w, right));
      u_max = std::max(u_max, Dot(w, right));
      v_min = std::min(v_min, Dot(w, up));
      v_max = std::max(v_max, Dot(w, up));
      d_min = std::min(d_min, Dot(w, forward));
      d_max = std::max(d_max, Dot(w, forward));
    }
  }
  if (u_min > u_max) return probe;
  const Vec3 center = right * (0.5 * (u_min + u_max)) +
                      up * (0.5 * (v_min + v_max)) +
                      forward * (0.5 * (d_min + d_max));
  const double extent =
      0.5 * std::max((u_max - u_min) / aspect, v_max - v_min);
  const double half = extent > 0.0 ? extent / fill : 1.0;
  const double distance = (d_max - d_min) + 10.0 * half;
  return PresetCamera(view, center, half, distance);
}

}  // namespace stepwise
