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

#ifndef STEPWISE_TRACE_SPLIT_H_
#define STEPWISE_TRACE_SPLIT_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stepwise/trace/record.h"

namespace stepwise {

enum class DataSplit { kTrain, kVal, kTest };

inline constexpr std::array<DataSplit, 3> kAllSplits = {
    DataSplit::kTrain, DataSplit::kVal, DataSplit::kTest};

std::string_view SplitName(DataSplit split);
std::optional<DataSplit> ParseSplit(std::string_view name);

struct SplitRatios {
  double train = 0.699;
  double val = 0.101;
  double test = 0.200;

  // Throws ConfigError unless all are >= 0 and they sum to 1 +- 1e-9.
  void Validate() const;
};

// Largest-remainder apportionment of n items. Remainder ties go to the
// larger ratio, then to train, val, test order.
std::array<int, 3> LargestRemainderCounts(int n, const SplitRatios& ratios);

using SplitManifest = std::map<std::string, DataSplit>;

// Accepts a JSON object {"id": "train", ...} or "id,split" lines ('#'
// comments allowed). Throws ParseError on unknown split names.
SplitManifest ParseSplitManifest(std::string_view text);
SplitManifest LoadSplitManifest(const std::filesystem::path& path);

struct DatasetSplit {
  std::vector<TraceRecord> train;
  std::vector<TraceRecord> val;
  std::vector<TraceRecord> test;
  // Records absent from a supplied manifest.
  std::vector<std::string> unassigned;

  std::vector<TraceRecord>& Of(DataSplit split);
  const std::vector<TraceRecord>& Of(DataSplit split) const;
};

// Per category: sort by model_id, shuffle with a seed derived from (seed,
// category), then cut by LargestRemainderCounts.
std::map<std::string, DataSplit> AssignSplits(
    const std::vector<std::pair<std::string, std::string>>& id_and_category,
    std::uint64_t seed, const SplitRatios& ratios = {});

// Records inside each split are ordered by (category, model_id).
DatasetSplit SplitDataset(const std::vector<TraceRecord>& records,
                          std::uint64_t seed, const SplitRatios& ratios = {});
DatasetSplit SplitDataset(const std::vector<TraceRecord>& records,
                          const SplitManifest& manifest);

}  // namespace stepwise

#endif  // STEPWISE_TRACE_SPLIT_H_
