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

#ifndef STEPWISE_CLI_OPTIONS_H_
#define STEPWISE_CLI_OPTIONS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stepwise/annotate/chat_client.h"
#include "stepwise/render/camera.h"
#include "stepwise/render/rasterizer.h"
#include "stepwise/schedule/scheduler.h"
#include "stepwise/trace/packing.h"

namespace stepwise {

inline constexpr std::uint64_t kDefaultSeed = 0;

// Everything a stage reads besides its input files. Serialized verbatim into
// the run manifest.
struct RunOptions {
  std::filesystem::path workdir = ".";
  std::filesystem::path input;
  std::uint64_t seed = kDefaultSeed;
  int jobs = 1;
  bool strict = false;

  std::filesystem::path scheduler_config;
  std::vector<std::string> max_batch;

  std::string renderer = "builtin";  // builtin | blender
  std::string blender = "blender";
  std::filesystem::path adapter = "adapter.py";
  RenderSettings render;
  std::vector<ViewId> views = {ViewId::kFront};

  std::string annotator = "mock";  // mock | endpoint
  std::string judge = "mock";      // mock | endpoint
  EndpointConfig endpoint;
  bool use_cache = true;
  bool self_consistency = false;
  int votes = 5;
  bool largest_component = false;

  PackingConfig packing;
  bool shuffle_packing = false;
  std::filesystem::path split_manifest;
  std::filesystem::path spec_file;

  // Fully resolved scheduler configuration.
  SchedulerConfig LoadScheduler() const;
  nlohmann::json ToJson() const;
};

// Comma-separated view names; throws UsageError on unknown names.
std::vector<ViewId> ParseViewList(const std::string& text);

}  // namespace stepwise

#endif  // STEPWISE_CLI_OPTIONS_H_
