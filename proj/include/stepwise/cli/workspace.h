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

#ifndef STEPWISE_CLI_WORKSPACE_H_
#define STEPWISE_CLI_WORKSPACE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "stepwise/asset/asset.h"
#include "stepwise/render/camera.h"
#include "stepwise/schedule/scheduler.h"
#include "stepwise/trace/trace.h"

namespace stepwise {

// Output layout under the working directory:
//   curate/assets.json, curate/<id>/{hierarchy,validation}.json
//   schedule/<id>.json
//   traces/<id>/step_{n}.{png,json}, step_{n}_mask.png,
//              final_complete.{png,json}, goal.json,
//              views/<view>/step_{n}.png (+ _mask.png, final_complete.png)
//   cache/, judge_cache/, pack/, dataset/, eval/, stats/, audit/
class Workspace {
 public:
  explicit Workspace(std::filesystem::path root) : root_(std::move(root)) {}

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path AssetsFile() const { return root_ / "curate" / "assets.json"; }
  std::filesystem::path CurateDir(const std::string& id) const {
    return root_ / "curate" / id;
  }
  std::filesystem::path ScheduleFile(const std::string& id) const {
    return root_ / "schedule" / (id + ".json");
  }
  std::filesystem::path TraceDir(const std::string& id) const {
    return root_ / "traces" / id;
  }
  std::filesystem::path AnnotateCache() const { return root_ / "cache"; }
  std::filesystem::path JudgeCache() const { return root_ / "judge_cache"; }
  std::filesystem::path Dir(const std::string& stage) const { return root_ / stage; }

  // Step image n (or the final image when n is nullopt) of one view.
  std::filesystem::path ImagePath(const std::string& id, ViewId view,
                                  std::optional<int> n) const;
  std::filesystem::path MaskPath(const std::string& id, ViewId view, int n) const;

  std::vector<AssetMeta> LoadAssets() const;
  AssemblySchedule LoadSchedule(const std::string& id) const;
  // Curated ids with a schedule, in curate order.
  std::vector<std::string> ScheduledIds() const;

 private:
  std::filesystem::path root_;
};

// Reads step_{n}.json and goal.json of an annotated trace directory.
AssemblyTrace LoadTrace(const Workspace& ws, const AssemblySchedule& schedule);

}  // namespace stepwise

#endif  // STEPWISE_CLI_WORKSPACE_H_
