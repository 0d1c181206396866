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

#include "stepwise/schedule/scheduler.h"

#include <algorithm>
#include <charconv>
#include <limits>

#include "stepwise/common/error.h"
#include "stepwise/common/file_io.h"
#include "stepwise/common/text.h"

namespace stepwise {
namespace {

int ParsePositiveInt(std::string_view text, std::string_view context) {
  const std::string trimmed = Trim(text);
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), value);
  if (trimmed.empty() || ec != std::errc() ||
      ptr != trimmed.data() + trimmed.size()) {
    Throw(ErrorCode::kConfig,
          std::string(context) + ": '" + trimmed + "' is not an integer");
  }
  if (value < 1) {
    Throw(ErrorCode::kConfig,
          std::string(context) + ": batch cap must be >= 1");
  }
  return value;
}

bool ParseBool(std::string_view text, std::string_view context) {
  const std::string v = ToLower(Trim(text));
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  Throw(ErrorCode::kConfig,
        std::string(context) + ": expected a boolean, got '" + v + "'");
}

struct Group {
  std::string key;
  int first_position = 0;
  int foundation_rank = std::numeric_limits<int>::max();
  std::vector<int> members;  // node ids in depth-first order
};

std::string BatchLabel(const std::vector<int>& parts,
                       const std::map<int, std::string>& names) {
  std::map<std::string, int> counts;
  std::vector<std::string> order;
  for (int id : parts) {
    const std::string key = NormalizeName(names.at(id));
    if (counts[key]++ == 0) order.push_back(key);
  }
  std::string best;
  int best_count = 0;
  for (const std::string& key : order) {
    if (counts[key] > best_count) {
      best = key;
      best_count = counts[key];
    }
  }
  return best;
}

}  // namespace

SchedulerConfig SchedulerConfig::Defaults() {
  SchedulerConfig cfg;
  for (const char* cat : {"Table", "Chair", "StorageFurniture", "Door", "Bed"}) {
    cfg.max_batch_by_category[cat] = kFurnitureBatchCap;
  }
  for (const char* cat : {"Scissors", "Knife"}) {
    cfg.max_batch_by_category[cat] = kPrecisionBatchCap;
  }
  return cfg;
}

int SchedulerConfig::CapFor(const std::string& category) const {
  const auto it = max_batch_by_category.find(category);
  return it == max_batch_by_category.end() ? fallback_max_batch : it->second;
}

void SchedulerConfig::Validate() const {
  if (fallback_max_batch < 1) {
    Throw(ErrorCode::kConfig, "fallback batch cap must be >= 1");
  }
  for (const auto& [cat, cap] : max_batch_by_category) {
    if (cap < 1) {
      Throw(ErrorCode::kConfig, "batch cap for " + cat + " must be >= 1");
    }
  }
}

SchedulerConfig ParseSchedulerConfig(std::string_view text) {
  SchedulerConfig cfg = SchedulerConfig::Defaults();
  int line_number = 0;
  for (const std::string& raw : Split(text, '\n')) {
    ++line_number;
    std::string line = raw.substr(0, raw.find('#'));
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string context = "line " + std::to_string(line_number);
    if (eq == std::string::npos) {
      Throw(ErrorCode::kConfig, context + ": expected key = value");
    }
    const std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));
    if (key == "fallback") {
      cfg.fallback_max_batch = ParsePositiveInt(value, context);
    } else if (StartsWith(key, "max_batch.")) {
      cfg.max_batch_by_category[key.substr(10)] =
          ParsePositiveInt(value, context);
    } else if (key == "priority_keywords") {
      cfg.priority_keywords.clear();
      for (const std::string& kw : Split(value, ',')) {
        const std::string k = ToLower(Trim(kw));
        if (!k.empty()) cfg.priority_keywords.push_back(k);
      }
    } else if (key == "symmetric_grouping") {
      cfg.symmetric_grouping = ParseBool(value, context);
    } else {
      Throw(ErrorCode::kConfig, context + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

SchedulerConfig LoadSchedulerConfig(const std::filesystem::path& path) {
  return ParseSchedulerConfig(ReadTextFile(path));
}

void ApplyMaxBatchOverride(SchedulerConfig& cfg, std::string_view spec) {
  const auto eq = spec.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    Throw(ErrorCode::kConfig, "--max-batch expects <category>=<n>, got '" +
                                  std::string(spec) + "'");
  }
  cfg.max_batch_by_category[Trim(spec.substr(0, eq))] =
      ParsePositiveInt(spec.substr(eq + 1), "--max-batch");
}

int FoundationRank(const std::string& part_name,
                   const std::vector<std::string>& keywords) {
  const std::string lowered = ToLower(part_name);
  for (std::size_t i = 0; i < keywords.size(); ++i) {
    if (!keywords[i].empty() && lowered.find(keywords[i]) != std::string::npos) {
      return static_cast<int>(i);
    }
  }
  return std::numeric_limits<int>::max();
}

AssemblySchedule BuildSchedule(const PartHierarchy& hierarchy,
                               const SchedulerConfig& cfg) {
  cfg.Validate();
  AssemblySchedule schedule;
  schedule.asset = hierarchy.meta;
  for (const PartNode& leaf : hierarchy.leaves) {
    schedule.leaf_ids.push_back(leaf.node_id);
    schedule.part_names[leaf.node_id] = leaf.name;
  }

  std::vector<Group> groups;
  std::map<std::string, std::size_t> group_of_key;
  for (std::size_t pos = 0; pos < hierarchy.leaves.size(); ++pos) {
    const PartNode& leaf = hierarchy.leaves[pos];
    std::string key = cfg.symmetric_grouping
                          ? NormalizeName(leaf.name)
                          : "#" + std::to_string(leaf.node_id);
    auto [it, inserted] = group_of_key.emplace(key, groups.size());
    if (inserted) {
      Group group;
      group.key = key;
      group.first_position = static_cast<int>(pos);
      group.foundation_rank = FoundationRank(leaf.name, cfg.priority_keywords);
      groups.push_back(std::move(group));
    }
    groups[it->second].members.push_back(leaf.node_id);
  }

  // Foundational groups lead (by keyword priority), then everything else by
  // the depth-first position of its first member.
  std::stable_sort(groups.begin(), groups.end(),
                   [](const Group& a, const Group& b) {
                     return std::tie(a.foundation_rank, a.first_position) <
                            std::tie(b.foundation_rank, b.first_position);
                   });

  const int cap = cfg.CapFor(hierarchy.meta.model_cat);
  for (const Group& group : groups) {
    for (std::size_t begin = 0; begin < group.members.size();
         begin += static_cast<std::size_t>(cap)) {
      const std::size_t end = std::min(group.members.size(),
                                       begin + static_cast<std::size_t>(cap));
      StepBatch batch;
      batch.index = static_cast<int>(schedule.steps.size()) + 1;
      batch.parts.assign(group.members.begin() + begin,
                         group.members.begin() + end);
      batch.label = BatchLabel(batch.parts, schedule.part_names);
      schedule.steps.push_back(std::move(batch));
    }
  }
  return schedule;
}

std::set<int> DeltaParts(const AssemblySchedule& schedule, int n) {
  if (n < 1 || n > schedule.N()) {
    Throw(ErrorCode::kRange, "step " + std::to_string(n) +
                                 " outside 1.." + std::to_string(schedule.N()));
  }
  const auto& parts = schedule.steps[static_cast<std::size_t>(n - 1)].parts;
  return {parts.begin(), parts.end()};
}

std::set<int> CumulativeParts(const AssemblySchedule& schedule, int n) {
  if (n < 0 || n > schedule.N()) {
    Throw(ErrorCode::kRange, "step " + std::to_string(n) +
                                 " outside 0.." + std::to_string(schedule.N()));
  }
  std::set<int> out;
  for (int i = 0; i < n; ++i) {
    const auto& parts = schedule.steps[static_cast<std::size_t>(i)].parts;
    out.insert(parts.begin(), parts.end());
  }
  return out;
}

ValidationReport ValidateSchedule(const AssemblySchedule& schedule,
                                  const SchedulerConfig& cfg) {
  ValidationReport report;
  if (schedule.steps.empty()) {
    report.AddError("EMPTY_SCHEDULE", "schedule has no steps");
    return report;
  }
  const int cap = cfg.CapFor(schedule.asset.model_cat);
  const std::set<int> leaves(schedule.leaf_ids.begin(),
                             schedule.leaf_ids.end());
  std::map<int, int> first_step;
  bool seen_non_foundational = false;
  for (std::size_t i = 0; i < schedule.steps.size(); ++i) {
    const StepBatch& step = schedule.steps[i];
    const int n = static_cast<int>(i) + 1;
    if (step.index != n) {
      report.AddError("STEP_INDEX", "step at position " + std::to_string(n) +
                                        " carries index " +
                                        std::to_string(step.index));
    }
    if (step.parts.empty()) {
      report.AddError("EMPTY_STEP", "step " + std::to_string(n) + " is empty");
      continue;
    }
    if (static_cast<int>(step.parts.size()) > cap) {
      report.AddError("CAP_EXCEEDED",
                      "step " + std::to_string(n) + " has " +
                          std::to_string(step.parts.size()) +
                          " parts, cap is " + std::to_string(cap));
    }
    bool all_foundational = true;
    for (int id : step.parts) {
      if (!leaves.count(id)) {
        report.AddError("PARTITION_VIOLATION",
                        "step " + std::to_string(n) + " names unknown part " +
                            std::to_string(id),
                        id);
      }
      auto [it, inserted] = first_step.emplace(id, n);
      if (!inserted) {
        report.AddError("PARTITION_VIOLATION",
                        "part " + std::to_string(id) + " appears in steps " +
                            std::to_string(it->second) + " and " +
                            std::to_string(n),
                        id);
      }
      const auto name = schedule.part_names.find(id);
      if (name == schedule.part_names.end() ||
          FoundationRank(name->second, cfg.priority_keywords) ==
              std::numeric_limits<int>::max()) {
        all_foundational = false;
      }
    }
    if (all_foundational && seen_non_foundational) {
      report.AddWarning("FOUNDATION_ORDER",
                        "foundational step " + std::to_string(n) +
                            " follows non-foundational steps");
    }
    if (!all_foundational) seen_non_foundational = true;
  }
  for (int id : schedule.leaf_ids) {
    if (!first_step.count(id)) {
      report.AddError("PARTITION_VIOLATION",
                      "part " + std::to_string(id) + " is never assembled", id);
    }
  }
  return report;
}

nlohmann::json ToJson(const AssemblySchedule& schedule) {
  nlohmann::json steps = nlohmann::json::array();
  for (const StepBatch& step : schedule.steps) {
    steps.push_back(
        {{"index", step.index}, {"parts", step.parts}, {"label", step.label}});
  }
  nlohmann::json names = nlohmann::json::object();
  for (const auto& [id, name] : schedule.part_names) {
    names[std::to_string(id)] = name;
  }
  return {{"asset", ToJson(schedule.asset)},
          {"N", schedule.N()},
          {"steps", steps},
          {"leaf_ids", schedule.leaf_ids},
          {"part_names", names}};
}

AssemblySchedule ScheduleFromJson(const nlohmann::json& j) {
  try {
    AssemblySchedule schedule;
    schedule.asset = AssetMetaFromJson(j.at("asset"));
    for (const auto& step : j.at("steps")) {
      schedule.steps.push_back({step.at("index").get<int>(),
                                step.at("parts").get<std::vector<int>>(),
                                step.value("label", std::string())});
    }
    schedule.leaf_ids = j.at("leaf_ids").get<std::vector<int>>();
    for (const auto& [key, name] : j.at("part_names").items()) {
      schedule.part_names[std::stoi(key)] = name.get<std::string>();
    }
    return schedule;
  } catch (const nlohmann::json::exception& e) {
    Throw(ErrorCode::kParse, std::string("schedule: ") + e.what());
  }
}

}  // namespace stepwise
