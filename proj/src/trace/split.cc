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

#include "stepwise/trace/split.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <tuple>

#include "stepwise/common/error.h"
#include "stepwise/common/file_io.h"
#include "stepwise/common/hash.h"
#include "stepwise/common/random.h"
#include "stepwise/common/text.h"

namespace stepwise {

std::string_view SplitName(DataSplit split) {
  switch (split) {
    case DataSplit::kTrain:
      return "train";
    case DataSplit::kVal:
      return "val";
    case DataSplit::kTest:
      return "test";
  }
  return "train";
}

std::optional<DataSplit> ParseSplit(std::string_view name) {
  const std::string lower = ToLower(Trim(name));
  if (lower == "train") return DataSplit::kTrain;
  if (lower == "val" || lower == "validation") return DataSplit::kVal;
  if (lower == "test") return DataSplit::kTest;
  return std::nullopt;
}

void SplitRatios::Validate() const {
  if (train < 0 || val < 0 || test < 0 ||
      std::abs(train + val + test - 1.0) > 1e-9) {
    Throw(ErrorCode::kConfig, "split ratios must be >= 0 and sum to 1");
  }
}

std::array<int, 3> LargestRemainderCounts(int n, const SplitRatios& ratios) {
  ratios.Validate();
  if (n < 0) Throw(ErrorCode::kRange, "negative record count");
  const std::array<double, 3> r = {ratios.train, ratios.val, ratios.test};
  std::array<int, 3> counts{};
  std::array<double, 3> remainder{};
  int assigned = 0;
  for (int i = 0; i < 3; ++i) {
    const double quota = r[i] * n;
    counts[i] = static_cast<int>(std::floor(quota + 1e-9));
    remainder[i] = quota - counts[i];
    assigned += counts[i];
  }
  std::array<int, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (std::abs(remainder[a] - remainder[b]) > 1e-12) {
      return remainder[a] > remainder[b];
    }
    return r[a] > r[b];
  });
  for (int k = 0; assigned < n; k = (k + 1) % 3, ++assigned) {
    ++counts[order[k]];
  }
  return counts;
}

SplitManifest ParseSplitManifest(std::string_view text) {
  SplitManifest manifest;
  const std::string trimmed = Trim(text);
  auto put = [&](const std::string& id, const std::string& name) {
    const auto split = ParseSplit(name);
    if (!split) Throw(ErrorCode::kParse, "unknown split '" + name + "' for " + id);
    manifest[id] = *split;
  };
  if (!trimmed.empty() && trimmed.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(trimmed);
    } catch (const nlohmann::json::exception& e) {
      Throw(ErrorCode::kParse, std::string("split manifest: ") + e.what());
    }
    for (const auto& [id, value] : j.items()) {
      if (!value.is_string()) Throw(ErrorCode::kParse, "split for " + id);
      put(id, value.get<std::string>());
    }
    return manifest;
  }
  int line_no = 0;
  for (const std::string& raw : Split(text, '\n')) {
    ++line_no;
    const std::string line = Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto fields = Split(line, ',');
    if (fields.size() != 2) {
      Throw(ErrorCode::kParse,
            "split manifest line " + std::to_string(line_no) + ": expected id,split");
    }
    put(Trim(fields[0]), Trim(fields[1]));
  }
  return manifest;
}

SplitManifest LoadSplitManifest(const std::filesystem::path& path) {
  return ParseSplitManifest(ReadTextFile(path));
}

std::vector<TraceRecord>& DatasetSplit::Of(DataSplit split) {
  return split == DataSplit::kTrain ? train
         : split == DataSplit::kVal ? val
                                    : test;
}

const std::vector<TraceRecord>& DatasetSplit::Of(DataSplit split) const {
  return split == DataSplit::kTrain ? train
         : split == DataSplit::kVal ? val
                                    : test;
}

std::map<std::string, DataSplit> AssignSplits(
    const std::vector<std::pair<std::string, std::string>>& id_and_category,
    std::uint64_t seed, const SplitRatios& ratios) {
  ratios.Validate();
  std::map<std::string, std::vector<std::string>> by_category;
  for (const auto& [id, category] : id_and_category) {
    by_category[category].push_back(id);
  }
  std::map<std::string, DataSplit> out;
  for (auto& [category, ids] : by_category) {
    std::sort(ids.begin(), ids.end());
    const std::uint64_t stream =
        std::stoull(Sha256Hex(category).substr(0, 16), nullptr, 16);
    std::mt19937_64 rng(DeriveSeed(seed, stream));
    Shuffle(ids, rng);
    const auto counts = LargestRemainderCounts(static_cast<int>(ids.size()), ratios);
    std::size_t i = 0;
    for (int s = 0; s < 3; ++s) {
      for (int k = 0; k < counts[s]; ++k) {
        out[ids[i++]] = kAllSplits[s];
      }
    }
  }
  return out;
}

DatasetSplit SplitDataset(const std::vector<TraceRecord>& records,
                          std::uint64_t seed, const SplitRatios& ratios) {
  std::vector<std::pair<std::string, std::string>> keys;
  for (const TraceRecord& r : records) keys.emplace_back(r.model_id, r.category);
  const auto assignment = AssignSplits(keys, seed, ratios);
  std::vector<const TraceRecord*> sorted;
  for (const TraceRecord& r : records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const TraceRecord* a, const TraceRecord* b) {
                     return std::tie(a->category, a->model_id) <
                            std::tie(b->category, b->model_id);
                   });
  DatasetSplit split;
  for (const TraceRecord* r : sorted) {
    split.Of(assignment.at(r->model_id)).push_back(*r);
  }
  return split;
}

DatasetSplit SplitDataset(const std::vector<TraceRecord>& records,
                          const SplitManifest& manifest) {
  DatasetSplit split;
  for (const TraceRecord& r : records) {
    const auto it = manifest.find(r.model_id);
    if (it == manifest.end()) {
      split.unassigned.push_back(r.model_id);
    } else {
      split.Of(it->second).push_back(r);
    }
  }
  return split;
}

}  // namespace stepwise
