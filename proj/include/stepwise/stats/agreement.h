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

#ifndef STEPWISE_STATS_AGREEMENT_H_
#define STEPWISE_STATS_AGREEMENT_H_

#include <map>
#include <string>
#include <vector>

#include "stepwise/stats/stat_value.h"

namespace stepwise {

inline constexpr double kDecisionThreshold = 0.5;

// 1 when score >= threshold, else 0.
std::vector<int> Binarize(const std::vector<double>& scores,
                          double threshold = kDecisionThreshold);

// Labels must be 0/1 and equal in length (>= 1); throws RangeError or
// ShapeError otherwise.
double RawAgreement(const std::vector<int>& a, const std::vector<int>& b);
// Undefined with "CONSTANT_RATERS" when p_e = 1.
StatValue CohenKappa(const std::vector<int>& a, const std::vector<int>& b);

struct RatingMatrix {
  // ratings[item][rater], each in 1..categories.
  std::vector<std::vector<int>> ratings;
  int categories = 5;

  // At least 2 items, a fixed rater count >= 2, and in-range cells.
  void Validate() const;
};

// Undefined with "SINGLE_CATEGORY" when p_e = 1.
StatValue FleissKappa(const RatingMatrix& m);

struct RankingStability {
  StatValue tau;
  bool top1_match = false;
};

// Methods are ranked by descending mean, ties broken by method name; tau is
// Kendall tau between the two rankings. Both maps must hold the same >= 2
// methods (StructureError otherwise).
std::vector<std::string> RankMethods(const std::map<std::string, double>& means);
RankingStability CompareRankings(const std::map<std::string, double>& a,
                                 const std::map<std::string, double>& b);

}  // namespace stepwise

#endif  // STEPWISE_STATS_AGREEMENT_H_
