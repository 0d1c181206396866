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

#ifndef STEPWISE_SCHEDULE_SCHEDULER_H_
#define STEPWISE_SCHEDULE_SCHEDULER_H_

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stepwise/asset/asset.h"
#include "stepwise/common/validation.h"

namespace stepwise {

inline constexpr int kFurnitureBatchCap = 15;
inline constexpr int kPrecisionBatchCap = 5;
inline constexpr int kFallbackBatchCap = 10;

struct SchedulerConfig {
  std::map<std::string, int> max_batch_by_category;
  int fallback_max_batch = kFallbackBatchCap;
  std::vector<std::string> priority_keywords = {"base", "frame", "body"};
  bool symmetric_grouping = true;

  // Furniture group capped at 15 parts per step, precision tools at 5.
  static SchedulerConfig Defaults();

  int CapFor(const std::string& category) const;

  // Throws ConfigError when a cap is < 1.
  void Validate() const;
};

// Plain key-value file, one "key = value" per line, '#' comments:
//   fallback = 10
//   max_batch.Chair = 15
//   priority_keywords = base, frame, body
//   symmetric_grouping = true
// Keys not present keep their Defaults() value.
SchedulerConfig LoadSchedulerConfig(const std::filesystem::path& path);
SchedulerConfig ParseSchedulerConfig(std::string_view text);

// Applies a "<category>=<n>" override as given to --max-batch.
void ApplyMaxBatchOverride(SchedulerConfig& cfg, std::string_view spec);

struct StepBatch {
  int index = 0;  // 1-based
  std::vector<int> parts;
  std::string label;

  bool operator==(const StepBatch&) const = default;
};

struct AssemblySchedule {
  AssetMeta asset;
  std::vector<StepBatch> steps;
  // Every leaf of the source hierarchy, in depth-first order.
  std::vector<int> leaf_ids;
  std::map<int, std::string> part_names;

  int N() const { return static_cast<int>(steps.size()); }

  bool operator==(const AssemblySchedule&) const = default;
};

// Index of the first foundational keyword contained in the part name, or
// INT_MAX when none matches.
int FoundationRank(const std::string& part_name,
                   const std::vector<std::string>& keywords);

AssemblySchedule BuildSchedule(const PartHierarchy& hierarchy,
                               const SchedulerConfig& cfg);

// The newly added parts at step n, i.e. P<=n minus P<=n-1. Throws RangeError
// unless 1 <= n <= N.
std::set<int> DeltaParts(const AssemblySchedule& schedule, int n);
// P<=n; n = 0 gives the empty set.
std::set<int> CumulativeParts(const AssemblySchedule& schedule, int n);

// Codes: EMPTY_SCHEDULE, STEP_INDEX, EMPTY_STEP, PARTITION_VIOLATION,
// CAP_EXCEEDED (errors); FOUNDATION_ORDER (warning).
ValidationReport ValidateSchedule(const AssemblySchedule& schedule,
                                  const SchedulerConfig& cfg);

nlohmann::json ToJson(const AssemblySchedule& schedule);
AssemblySchedule ScheduleFromJson(const nlohmann::json& j);

}  // namespace stepwise

#endif  // STEPWISE_SCHEDULE_SCHEDULER_H_
