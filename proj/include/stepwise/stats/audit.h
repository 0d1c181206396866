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

#ifndef STEPWISE_STATS_AUDIT_H_
#define STEPWISE_STATS_AUDIT_H_

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stepwise/metrics/multiview.h"

namespace stepwise {

inline constexpr int kDefaultAuditTop = 10;

// Per-prompt aggregate scores of one judge run, keyed by prompt id.
using JudgeRun = std::map<std::string, std::map<Metric, double>>;

struct ScoreGap {
  std::string id;
  double a = 0;
  double b = 0;
  double gap = 0;  // |a - b|
};

// For every metric, the `top` prompts scored by both runs with the largest
// absolute gap; ties keep id order.
std::map<Metric, std::vector<ScoreGap>> TopScoreGaps(const JudgeRun& a,
                                                     const JudgeRun& b,
                                                     int top = kDefaultAuditTop);

nlohmann::json ToJson(const std::map<Metric, std::vector<ScoreGap>>& gaps);

// {"prompts": {id: {"CN": score, ...}}}; unknown metric names throw
// ParseError.
nlohmann::json ToJson(const JudgeRun& run);
JudgeRun JudgeRunFromJson(const nlohmann::json& j);

}  // namespace stepwise

#endif  // STEPWISE_STATS_AUDIT_H_
