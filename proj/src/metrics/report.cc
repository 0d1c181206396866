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

#include "stepwise/metrics/report.h"

namespace stepwise {
namespace {

nlohmann::json ScoreMap(const std::map<Metric, double>& scores) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [metric, value] : scores) {
    j[std::string(MetricName(metric))] = value;
  }
  return j;
}

nlohmann::json ReasonMap(const std::map<Metric, std::string>& reasons) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [metric, reason] : reasons) {
    j[std::string(MetricName(metric))] = reason;
  }
  return j;
}

}  // namespace

void MetricReport::Aggregate() {
  ViewScores by_metric;
  for (const ViewReport& v : views) {
    for (const auto& [metric, value] : v.scores) {
      by_metric[metric][v.view] = value;
    }
  }
  aggregate = AggregateMultiview(by_metric);
  not_applicable.clear();
  for (Metric m : kAllMetrics) {
    if (aggregate.count(m)) continue;
    std::string reason = "no view produced a score";
    for (const ViewReport& v : views) {
      const auto it = v.not_applicable.find(m);
      if (it != v.not_applicable.end()) {
        reason = it->second;
        break;
      }
    }
    not_applicable[m] = reason;
  }
}

nlohmann::json MetricReport::ToJson() const {
  nlohmann::json views_json = nlohmann::json::array();
  for (const ViewReport& v : views) {
    nlohmann::json decisions = nlohmann::json::array();
    for (const JudgeDecision& d : v.decisions) decisions.push_back(stepwise::ToJson(d));
    views_json.push_back(
        {{"view", ViewName(v.view)},
         {"scores", ScoreMap(v.scores)},
         {"not_applicable", ReasonMap(v.not_applicable)},
         {"counts", v.counts},
         {"decisions", decisions},
         {"masks", v.masks},
         {"ts_empty_previous_steps", v.ts.empty_previous},
         {"ts_retention", v.ts.retention}});
  }
  return {{"trace_id", trace_id},
          {"goal", goal},
          {"instruction_spec", stepwise::ToJson(spec)},
          {"views", views_json},
          {"aggregate", ScoreMap(aggregate)},
          {"not_applicable", ReasonMap(not_applicable)},
          {"notes", notes}};
}

std::map<Metric, double> AggregateScoresFromJson(const nlohmann::json& report) {
  std::map<Metric, double> out;
  for (const auto& [name, value] : report.at("aggregate").items()) {
    if (const auto metric = ParseMetric(name)) out[*metric] = value.get<double>();
  }
  return out;
}

}  // namespace stepwise
