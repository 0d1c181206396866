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

#include "stepwise/trace/trace.h"

#include "stepwise/common/error.h"
#include "stepwise/common/file_io.h"

namespace stepwise {

Bytes ImageRef::Load() const {
  if (bytes) return *bytes;
  if (path.empty()) Throw(ErrorCode::kNotFound, "image has no bytes and no path");
  return ReadBinaryFile(path);
}

std::string ChangeDescription(const std::vector<std::string>& delta_names,
                              const std::vector<std::string>& existing_names) {
  if (existing_names.empty()) return "Place " + SummarizeNames(delta_names);
  return "Add " + SummarizeNames(delta_names) + " to " +
         SummarizeNames(existing_names);
}

StepMetadata MetadataForStep(const AssemblySchedule& schedule, int n) {
  if (n < 1 || n > schedule.N()) {
    Throw(ErrorCode::kRange, "step " + std::to_string(n) + " outside 1.." +
                                 std::to_string(schedule.N()));
  }
  auto name_of = [&](int id) {
    const auto it = schedule.part_names.find(id);
    return it == schedule.part_names.end() ? "#" + std::to_string(id)
                                           : it->second;
  };
  StepMetadata meta;
  std::vector<std::string> existing;
  for (int k = 1; k <= n; ++k) {
    for (int id : schedule.steps[k - 1].parts) {
      meta.cumulative_ids.push_back(id);
      meta.cumulative_names.push_back(name_of(id));
      if (k < n) existing.push_back(name_of(id));
    }
  }
  const StepBatch& batch = schedule.steps[n - 1];
  for (int id : batch.parts) {
    meta.delta_ids.push_back(id);
    meta.delta_names.push_back(name_of(id));
  }
  meta.label = batch.label;
  meta.change_description = ChangeDescription(meta.delta_names, existing);
  return meta;
}

AssemblyTrace AssembleTrace(const GoalPrompt& goal,
                            const AssemblySchedule& schedule,
                            const std::vector<StepRationale>& rationales,
                            const std::vector<ImageRef>& images) {
  const std::size_t n = static_cast<std::size_t>(schedule.N());
  if (rationales.size() != n || images.size() != n) {
    Throw(ErrorCode::kStructure,
          "trace needs " + std::to_string(n) + " rationales and images, got " +
              std::to_string(rationales.size()) + " and " +
              std::to_string(images.size()));
  }
  AssemblyTrace trace;
  trace.trace_id = schedule.asset.model_id;
  trace.category = schedule.asset.model_cat;
  trace.goal = goal;
  for (std::size_t i = 0; i < n; ++i) {
    TraceStep step;
    step.n = static_cast<int>(i) + 1;
    step.rationale = rationales[i];
    step.rationale.step = step.n;
    step.image = images[i];
    step.metadata = MetadataForStep(schedule, step.n);
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

nlohmann::json StepJson(int n, const StepMetadata& metadata,
                        const std::optional<StepRationale>& rationale) {
  nlohmann::json parts = nlohmann::json::array();
  for (std::size_t i = 0; i < metadata.cumulative_ids.size(); ++i) {
    parts.push_back({{"id", metadata.cumulative_ids[i]},
                     {"name", metadata.cumulative_names[i]}});
  }
  nlohmann::json added = nlohmann::json::array();
  for (std::size_t i = 0; i < metadata.delta_ids.size(); ++i) {
    added.push_back(
        {{"id", metadata.delta_ids[i]}, {"name", metadata.delta_names[i]}});
  }
  nlohmann::json j = {{"step", n},
                      {"cumulative_parts", parts},
                      {"new_parts", added},
                      {"label", metadata.label},
                      {"change_description", metadata.change_description}};
  if (rationale) j["rationale"] = rationale->text;
  return j;
}

nlohmann::json FinalJson(const AssemblySchedule& schedule,
                         const std::optional<GoalPrompt>& goal) {
  nlohmann::json j = StepJson(schedule.N(), MetadataForStep(schedule, schedule.N()),
                              std::nullopt);
  j.erase("new_parts");
  j.erase("label");
  j["total_steps"] = schedule.N();
  j["model_id"] = schedule.asset.model_id;
  j["model_cat"] = schedule.asset.model_cat;
  j["change_description"] = "Complete assembly";
  if (goal) j["prompt"] = goal->text;
  return j;
}

}  // namespace stepwise
