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

#include "stepwise/metrics/confidence.h"

#include <algorithm>
#include <cmath>

#include "stepwise/common/error.h"

namespace stepwise {

double Confidence(double logscore_u, double logscore_v) {
  if (std::isnan(logscore_u) || std::isnan(logscore_v)) {
    Throw(ErrorCode::kNumeric, "NaN logscore");
  }
  if (logscore_u == INFINITY || logscore_v == INFINITY) {
    Throw(ErrorCode::kNumeric, "infinite logscore");
  }
  if (logscore_u == -INFINITY && logscore_v == -INFINITY) {
    Throw(ErrorCode::kNumeric, "both logscores are -inf");
  }
  // Smaller side as the complement of the larger: swapped arguments sum to
  // exactly 1.
  if (logscore_u >= logscore_v) {
    return 1.0 / (1.0 + std::exp(logscore_v - logscore_u));
  }
  return 1.0 - 1.0 / (1.0 + std::exp(logscore_u - logscore_v));
}

double JudgeDecision::ConfidenceOf(const std::string& label) const {
  if (label == answer) return confidence;
  if (std::find(options.begin(), options.end(), label) != options.end()) {
    return 1.0 - confidence;
  }
  return 0.0;
}

nlohmann::json ToJson(const JudgeDecision& d) {
  nlohmann::json j = {{"question_id", d.question_id},
                      {"answer", d.answer},
                      {"confidence", d.confidence},
                      {"options", d.options},
                      {"method", d.method},
                      {"transcript_ref", d.transcript_ref},
                      {"notes", d.notes}};
  if (d.logscores) {
    j["logscores"] = {d.logscores->first, d.logscores->second};
  }
  return j;
}

JudgeDecision JudgeDecisionFromJson(const nlohmann::json& j) {
  JudgeDecision d;
  d.question_id = j.at("question_id").get<std::string>();
  d.answer = j.at("answer").get<std::string>();
  d.confidence = j.at("confidence").get<double>();
  d.options = j.at("options").get<std::vector<std::string>>();
  d.method = j.value("method", std::string("logscore"));
  d.transcript_ref = j.value("transcript_ref", std::string());
  d.notes = j.value("notes", std::vector<std::string>());
  if (j.contains("logscores")) {
    d.logscores = {j["logscores"].at(0).get<double>(),
                   j["logscores"].at(1).get<double>()};
  }
  return d;
}

}  // namespace stepwise
