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

#ifndef STEPWISE_METRICS_REPORT_H_
#define STEPWISE_METRICS_REPORT_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stepwise/metrics/confidence.h"
#include "stepwise/metrics/instruction.h"
#include "stepwise/metrics/multiview.h"
#include "stepwise/metrics/scores.h"

namespace stepwise {

struct ViewReport {
  ViewId view = ViewId::kFront;
  // Defined metrics only; undefined ones are listed in not_applicable.
  std::map<Metric, double> scores;
  std::map<Metric, std::string> not_applicable;
  ComponentCounts counts;
  std::vector<JudgeDecision> decisions;
  std::vector<std::string> masks;  // mask files used for TS
  TsDiagnostics ts;
};

struct MetricReport {
  std::string trace_id;
  std::string goal;
  InstructionSpec spec;
  std::vector<ViewReport> views;
  std::map<Metric, double> aggregate;
  std::map<Metric, std::string> not_applicable;
  std::vector<std::string> notes;

  // Fills aggregate and the report-level not_applicable map from the views.
  void Aggregate();
  bool Applicable(Metric metric) const { return aggregate.count(metric) > 0; }

  nlohmann::json ToJson() const;
};

// Reads the aggregate and per-view score maps back from MetricReport JSON.
std::map<Metric, double> AggregateScoresFromJson(const nlohmann::json& report);

}  // namespace stepwise

#endif  // STEPWISE_METRICS_REPORT_H_
