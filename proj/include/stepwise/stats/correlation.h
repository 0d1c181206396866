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

#ifndef STEPWISE_STATS_CORRELATION_H_
#define STEPWISE_STATS_CORRELATION_H_

#include <string>
#include <vector>

#include "stepwise/stats/stat_value.h"

namespace stepwise {

struct PairedScores {
  std::vector<std::string> ids;
  std::vector<double> a;
  std::vector<double> b;

  // Equal lengths of at least 2 and finite values; throws ShapeError or
  // RangeError. ids may be empty.
  void Validate() const;
};

// 1-based ranks with ties sharing their average rank.
std::vector<double> AverageRanks(const std::vector<double>& values);

// All three are undefined ("ZERO_VARIANCE") when either list is constant.
StatValue Pearson(const std::vector<double>& a, const std::vector<double>& b);
StatValue Spearman(const PairedScores& p);
// Tau-b, O(n log n).
StatValue Kendall(const PairedScores& p);

}  // namespace stepwise

#endif  // STEPWISE_STATS_CORRELATION_H_
