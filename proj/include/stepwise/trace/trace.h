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

#ifndef STEPWISE_TRACE_TRACE_H_
#define STEPWISE_TRACE_TRACE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stepwise/annotate/annotator.h"
#include "stepwise/common/hash.h"
#include "stepwise/schedule/scheduler.h"

namespace stepwise {

// Image held either inline or by path.
struct ImageRef {
  std::filesystem::path path;
  std::optional<Bytes> bytes;

  // Inline bytes, else the file contents. Throws NotFound when neither.
  Bytes Load() const;

  bool operator==(const ImageRef&) const = default;
};

struct StepMetadata {
  std::vector<int> cumulative_ids;
  std::vector<std::string> cumulative_names;
  std::vector<int> delta_ids;
  std::vector<std::string> delta_names;
  std::string label;
  std::string change_description;

  bool operator==(const StepMetadata&) const = default;
};

struct TraceStep {
  int n = 1;
  StepRationale rationale;
  ImageRef image;
  StepMetadata metadata;

  bool operator==(const TraceStep&) const = default;
};

struct AssemblyTrace {
  std::string trace_id;  // model_id
  std::string category;
  GoalPrompt goal;
  std::vector<TraceStep> steps;
  // Rendering of the complete object; defaults to the last step image.
  std::optional<ImageRef> final_image;

  int N() const { return static_cast<int>(steps.size()); }
};

// Step metadata from the schedule: P<=n and delta(n) in schedule order, ids
// and names, plus a one-line change description.
StepMetadata MetadataForStep(const AssemblySchedule& schedule, int n);

// "Add leg (x4) to base, seat" style sentence; first step reads
// "Place base".
std::string ChangeDescription(const std::vector<std::string>& delta_names,
                              const std::vector<std::string>& existing_names);

// Zips rationales and images with the schedule steps. Throws StructureError
// unless |rationales| = |images| = N.
AssemblyTrace AssembleTrace(const GoalPrompt& goal,
                            const AssemblySchedule& schedule,
                            const std::vector<StepRationale>& rationales,
                            const std::vector<ImageRef>& images);

// Schema of step_{n}.json: step index, cumulative part list, change
// description, and the rationale when one is known.
nlohmann::json StepJson(int n, const StepMetadata& metadata,
                        const std::optional<StepRationale>& rationale);
nlohmann::json FinalJson(const AssemblySchedule& schedule,
                         const std::optional<GoalPrompt>& goal);

}  // namespace stepwise

#endif  // STEPWISE_TRACE_TRACE_H_
