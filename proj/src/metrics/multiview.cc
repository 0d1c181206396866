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

#include "stepwise/metrics/multiview.h"

#include <algorithm>

#include "stepwise/common/error.h"

namespace stepwise {

std::string_view MetricName(Metric metric) {
  switch (metric) {
    case Metric::kCN:
      return "CN";
    case Metric::kSF:
      return "SF";
    case Metric::kAF:
      return "AF";
    case Metric::kCP:
      return "CP";
    case Metric::kVT:
      return "VT";
    case Metric::kTS:
      return "TS";
    case Metric::kRA:
      return "RA";
  }
  return "?";
}

std::optional<Metric> ParseMetric(std::string_view name) {
  for (Metric m : kAllMetrics) {
    if (MetricName(m) == name) return m;
  }
  return std::nullopt;
}

AggregationRule RuleFor(Metric metric) {
  switch (metric) {
    case Metric::kCN:
    case Metric::kAF:
    case Metric::kCP:
      return AggregationRule::kMax;
    default:
      return AggregationRule::kMean;
  }
}

double Aggregate(Metric metric, const std::vector<double>& view_scores) {
  if (view_scores.empty()) {
    Throw(ErrorCode::kRange,
          "no view scores for " + std::string(MetricName(metric)));
  }
  if (RuleFor(metric) == AggregationRule::kMax) {
    return *std::max_element(view_scores.begin(), view_scores.end());
  }
  double sum = 0.0;
  for (double s : view_scores) sum += s;
  return sum / static_cast<double>(view_scores.size());
}

std::map<Metric, double> AggregateMultiview(const ViewScores& scores) {
  std::map<Metric, double> out;
  for (const auto& [metric, by_view] : scores) {
    if (by_view.empty()) continue;
    std::vector<double> values;
    for (const auto& [view, value] : by_view) values.push_back(value);
    out[metric] = Aggregate(metric, values);
  }
  return out;
}

}  // namespace stepwise
