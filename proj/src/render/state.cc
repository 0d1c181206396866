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

#include "stepwise/render/state.h"

#include <string>

#include "stepwise/common/error.h"

namespace stepwise {

std::size_t ComposedState::TriangleCount() const {
  std::size_t count = 0;
  for (const TriangleMesh& mesh : meshes) count += mesh.triangles.size();
  return count;
}

MeshLibrary LoadLeafMeshes(const PartHierarchy& hierarchy) {
  MeshLibrary library;
  for (const PartNode& leaf : hierarchy.leaves) {
    auto& meshes = library[leaf.node_id];
    for (const auto& ref : leaf.mesh_refs) {
      try {
        meshes.push_back(LoadMesh(ref));
      } catch (const Error& e) {
        Throw(e.code(), "leaf " + std::to_string(leaf.node_id) + " ('" +
                            leaf.name + "'): " + e.what());
      }
    }
  }
  return library;
}

ComposedState ComposeState(const AssemblySchedule& schedule, int n,
                           const MeshLibrary& library, double scale) {
  if (n < 0 || n > schedule.N()) {
    Throw(ErrorCode::kRange, "step " + std::to_string(n) + " outside 0.." +
                                 std::to_string(schedule.N()));
  }
  ComposedState state;
  state.step = n;
  state.scale = scale;
  for (int i = 0; i < n; ++i) {
    for (int id : schedule.steps[static_cast<std::size_t>(i)].parts) {
      const auto it = library.find(id);
      if (it == library.end() || it->second.empty()) {
        const auto name = schedule.part_names.find(id);
        Throw(ErrorCode::kNotFound,
              "no mesh loaded for leaf " + std::to_string(id) +
                  (name != schedule.part_names.end()
                       ? " ('" + name->second + "')"
                       : std::string()));
      }
      for (const TriangleMesh& mesh : it->second) {
        TriangleMesh placed = mesh;
        for (Vec3& v : placed.vertices) v = v * scale;
        state.meshes.push_back(std::move(placed));
      }
    }
  }
  return state;
}

ComposedState ComposeState(const PartHierarchy& hierarchy,
                           const AssemblySchedule& schedule, int n,
                           double scale) {
  return ComposeState(schedule, n, LoadLeafMeshes(hierarchy), scale);
}

}  // namespace stepwise
