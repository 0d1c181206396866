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

#include "stepwise/cli/workspace.h"

#include "stepwise/annotate/annotator.h"
#include "stepwise/common/error.h"
#include "stepwise/common/file_io.h"

namespace stepwise {

fs::path Workspace::ImagePath(const std::string& id, ViewId view,
                              std::optional<int> n) const {
  const std::string file =
      n ? "step_" + std::to_string(*n) + ".png" : "final_complete.png";
  if (view == ViewId::kFront) return TraceDir(id) / file;
  return TraceDir(id) / "views" / std::string(ViewName(view)) / file;
}

fs::path Workspace::MaskPath(const std::string& id, ViewId view, int n) const {
  const std::string file = "step_" + std::to_string(n) + "_mask.png";
  if (view == ViewId::kFront) return TraceDir(id) / file;
  return TraceDir(id) / "views" / std::string(ViewName(view)) / file;
}

std::vector<AssetMeta> Workspace::LoadAssets() const {
  const nlohmann::json j = ReadJsonFile(AssetsFile());
  std::vector<AssetMeta> out;
  for (const auto& a : j.at("assets")) out.push_back(AssetMetaFromJson(a));
  return out;
}

AssemblySchedule Workspace::LoadSchedule(const std::string& id) const {
  return ScheduleFromJson(ReadJsonFile(ScheduleFile(id)));
}

std::vector<std::string> Workspace::ScheduledIds() const {
  std::vector<std::string> out;
  for (const AssetMeta& meta : LoadAssets()) {
    if (fs::exists(ScheduleFile(meta.model_id))) out.push_back(meta.model_id);
  }
  return out;
}

AssemblyTrace LoadTrace(const Workspace& ws, const AssemblySchedule& schedule) {
  const std::string& id = schedule.asset.model_id;
  const fs::path dir = ws.TraceDir(id);
  const GoalPrompt goal = GoalPromptFromJson(ReadJsonFile(dir / "goal.json"));
  std::vector<StepRationale> rationales;
  for (const auto& r : ReadJsonFile(dir / "rationales.json")) {
    rationales.push_back(StepRationaleFromJson(r));
  }
  std::vector<ImageRef> images;
  for (int n = 1; n <= schedule.N(); ++n) {
    images.push_back({ws.ImagePath(id, ViewId::kFront, n), std::nullopt});
  }
  AssemblyTrace trace = AssembleTrace(goal, schedule, rationales, images);
  const fs::path final_png = ws.ImagePath(id, ViewId::kFront, std::nullopt);
  if (fs::exists(final_png)) trace.final_image = ImageRef{final_png, std::nullopt};
  return trace;
}

}  // namespace stepwise
