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

#ifndef STEPWISE_RENDER_MESH_H_
#define STEPWISE_RENDER_MESH_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "stepwise/render/geometry.h"

namespace stepwise {

struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;
  std::filesystem::path source_path;

  double SurfaceArea() const;
};

// Wavefront OBJ subset: "v" and "f" records (with optional /vt/vn suffixes
// and negative indices). Polygons are fan-triangulated. Other records are
// ignored. Throws NotFound, or ParseError naming the 1-based line.
TriangleMesh LoadMesh(const std::filesystem::path& path);
TriangleMesh ParseObj(std::string_view text,
                      const std::filesystem::path& source_path = {});

}  // namespace stepwise

#endif  // STEPWISE_RENDER_MESH_H_
