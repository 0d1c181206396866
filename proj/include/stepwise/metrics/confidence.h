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

#ifndef STEPWISE_METRICS_CONFIDENCE_H_
#define STEPWISE_METRICS_CONFIDENCE_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace stepwise {

// exp(lu) / (exp(lu) + exp(lv)), evaluated without overflow. -inf is
// allowed for one side. Throws NumericError on NaN, +inf, or two -inf.
double Confidence(double logscore_u, double logscore_v);

struct JudgeDecision {
  std::string question_id;
  std::string answer;
  // Confidence of `answer`, in [0, 1].
  double confidence = 1.0;
  std::vector<std::string> options;  // exactly two for forced choice
  // Option logscores in `options` order, when the endpoint returned them.
  std::optional<std::pair<double, double>> logscores;
  // "logscore", "hard_label" or "vote".
  std::string method = "logscore";
  std::string transcript_ref;
  std::vector<std::string> notes;

  // Confidence of `label`: `confidence` for the answer, its complement for
  // the other option, 0 for anything else.
  double ConfidenceOf(const std::string& label) const;
};

nlohmann::json ToJson(const JudgeDecision& decision);
JudgeDecision JudgeDecisionFromJson(const nlohmann::json& j);

}  // namespace stepwise

#endif  // STEPWISE_METRICS_CONFIDENCE_H_
