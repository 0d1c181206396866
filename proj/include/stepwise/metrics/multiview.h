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

#ifndef STEPWISE_METRICS_MULTIVIEW_H_
#define STEPWISE_METRICS_MULTIVIEW_H_

#include <array>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "stepwise/render/camera.h"

namespace stepwise {

enum class Metric { kCN, kSF, kAF, kCP, kVT, kTS, kRA };

inline constexpr std::array<Metric, 7> kAllMetrics = {
    Metric::kCN, Metric::kSF, Metric::kAF, Metric::kCP,
    Metric::kVT, Metric::kTS, Metric::kRA};

std::string_view MetricName(Metric metric);
std::optional<Metric> ParseMetric(std::string_view name);

enum class AggregationRule { kMax, kMean };

// Max for the presence metrics CN, AF, CP; mean for SF, VT, TS, RA.
AggregationRule RuleFor(Metric metric);

// Throws RangeError for an empty list.
double Aggregate(Metric metric, const std::vector<double>& view_scores);

using ViewScores = std::map<Metric, std::map<ViewId, double>>;

// Aggregates every metric with at least one view.
std::map<Metric, double> AggregateMultiview(const ViewScores& scores);

}  // namespace stepwise

#endif  // STEPWISE_METRICS_MULTIVIEW_H_
