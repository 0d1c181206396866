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

#ifndef STEPWISE_RENDER_CONTRACT_H_
#define STEPWISE_RENDER_CONTRACT_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stepwise/render/camera.h"
#include "stepwise/render/rasterizer.h"

namespace stepwise {

// File-based render contract shared by the built-in rasterizer and the
// external Blender adapter. One request lists cumulative states (mesh files
// in original coordinates), the uniform scale, views, settings, and one
// output PNG per (state, view).
struct RenderJob {
  int step = 0;
  std::string label;  // "step" or "final"
  std::vector<std::filesystem::path> meshes;
  std::map<ViewId, std::filesystem::path> outputs;
};

struct RenderRequest {
  int version = 1;
  double scale = kDefaultAssemblyScale;
  RenderSettings settings;
  std::vector<ViewId> views = {ViewId::kFront};
  // Shared per-view cameras. When empty, executors fit them to the state
  // with the most meshes.
  std::map<ViewId, Camera> cameras;
  std::vector<RenderJob> states;
  std::filesystem::path response_path;
};

struct RenderResult {
  int step = 0;
  std::string label;
  ViewId view = ViewId::kFront;
  std::filesystem::path path;
  std::string status;  // "ok" or "error"
  std::string log;

  bool operator==(const RenderResult&) const = default;
};

nlohmann::json ToJson(const RenderRequest& request);
RenderRequest RenderRequestFromJson(const nlohmann::json& j);
void WriteRenderRequest(const std::filesystem::path& path,
                        const RenderRequest& request);
RenderRequest ReadRenderRequest(const std::filesystem::path& path);

nlohmann::json ToJson(const std::vector<RenderResult>& results);
std::vector<RenderResult> RenderResultsFromJson(const nlohmann::json& j);

// Renders every (state, view) with the built-in rasterizer. A failing state
// is recorded with status "error" and the batch continues.
std::vector<RenderResult> ExecuteBuiltin(const RenderRequest& request);

struct BlenderOptions {
  std::string executable = "blender";
  std::filesystem::path adapter_script = "adapter.py";
  std::filesystem::path log_path;  // defaults next to the request file
};

// Writes the request, runs
//   <executable> --background --python <adapter> -- <request_file>
// and reads the response file. Throws Error(kIo) when the process cannot be
// launched or exits non-zero.
std::vector<RenderResult> ExecuteBlender(
    const RenderRequest& request, const std::filesystem::path& request_path,
    const BlenderOptions& options);

// Runs argv[0] with the remaining arguments (PATH lookup), redirecting
// stdout and stderr to `log_path`. Returns the exit status.
int RunProcess(const std::vector<std::string>& argv,
               const std::filesystem::path& log_path);

}  // namespace stepwise

#endif  // STEPWISE_RENDER_CONTRACT_H_
