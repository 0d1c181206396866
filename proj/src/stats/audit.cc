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

#include "stepwise/stats/audit.h"

#include <algorithm>
#include <cmath>

#include "stepwise/common/error.h"

namespace stepwise {

std::map<Metric, std::vector<ScoreGap>> TopScoreGaps(const JudgeRun& a,
                                                     const JudgeRun& b, int top) {
  if (top < 1) Throw(ErrorCode::kRange, "audit size must be >= 1");
  std::map<Metric, std::vector<ScoreGap>> out;
  for (const auto& [id, scores_a] : a) {
    const auto other = b.find(id);
    if (other == b.end()) continue;
    for (const auto& [metric, sa] : scores_a) {
      const auto sb = other->second.find(metric);
      if (sb == other->second.end()) continue;
      out[metric].push_back({id, sa, sb->second, std::fabs(sa - sb->second)});
    }
  }
  for (auto& [metric, gaps] : out) {
    std::stable_sort(gaps.begin(), gaps.end(),
                     [](const ScoreGap& x, const ScoreGap& y) { return x.gap > y.gap; });
    if (gaps.size() > static_cast<std::size_t>(top)) gaps.resize(top);
  }
  return out;
}

nlohmann::json ToJson(const std::map<Metric, std::vector<ScoreGap>>& gaps) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [metric, list] : gaps) {
    auto& arr = j[std::string(MetricName(metric))] = nlohmann::json::array();
    for (const auto& g : list) {
      arr.push_back({{"id", g.id}, {"a", g.a}, {"b", g.b}, {"gap", g.gap}});
    }
  }
  return j;
}

nlohmann::json ToJson(const JudgeRun& run) {
  nlohmann::json prompts = nlohmann::json::object();
  for (const auto& [id, scores] : run) {
    nlohmann::json& entry = prompts[id] = nlohmann::json::object();
    for (const auto& [metric, score] : scores) entry[std::string(MetricName(metric))] = score;
  }
  return {{"prompts", prompts}};
}

JudgeRun JudgeRunFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("prompts") || !j.at("prompts").is_object()) {
    Throw(ErrorCode::kParse, "judge run needs a \"prompts\" object");
  }
  JudgeRun run;
  for (const auto& [id, scores] : j.at("prompts").items()) {
    auto& entry = run[id];
    for (const auto& [name, value] : scores.items()) {
      const auto metric = ParseMetric(name);
      if (!metric) Throw(ErrorCode::kParse, "unknown metric '" + name + "'");
      if (!value.is_number()) {
        Throw(ErrorCode::kParse, "score for " + id + "/" + name + " is not a number");
      }
      entry[*metric] = value.get<double>();
    }
  }
  return run;
}

}  // namespace stepwise
