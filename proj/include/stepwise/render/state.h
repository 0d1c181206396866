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

#ifndef STEPWISE_RENDER_STATE_H_
#define STEPWISE_RENDER_STATE_H_

#include <map>
#include <vector>

#include "stepwise/asset/asset.h"
#include "stepwise/render/mesh.h"
#include "stepwise/schedule/scheduler.h"

namespace stepwise {

inline constexpr double kDefaultAssemblyScale = 3.0;

struct ComposedState {
  int step = 0;
  double scale = kDefaultAssemblyScale;
  std::vector<TriangleMesh> meshes;

  std::size_t TriangleCount() const;
};

// Meshes of every leaf, keyed by node id.
using MeshLibrary = std::map<int, std::vector<TriangleMesh>>;

// Loads all leaf meshes; throws NotFound naming the leaf on a missing file.
MeshLibrary LoadLeafMeshes(const PartHierarchy& hierarchy);

// Meshes of P<=n in schedule order, original coordinates times `scale`.
// n = 0 gives an empty state. Throws RangeError for n outside 0..N and
// NotFound when a leaf of P<=n has no mesh in the library.
ComposedState ComposeState(const AssemblySchedule& schedule, int n,
                           const MeshLibrary& library,
                           double scale = kDefaultAssemblyScale);
ComposedState ComposeState(const PartHierarchy& hierarchy,
                           const AssemblySchedule& schedule, int n,
                           double scale = kDefaultAssemblyScale);

}  // namespace stepwise

#endif  // STEPWISE_RENDER_STATE_H_
