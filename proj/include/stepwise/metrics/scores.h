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

#ifndef STEPWISE_METRICS_SCORES_H_
#define STEPWISE_METRICS_SCORES_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stepwise/metrics/confidence.h"
#include "stepwise/metrics/instruction.h"
#include "stepwise/render/image.h"

namespace stepwise {

inline constexpr const char* kYes = "Yes";
inline constexpr const char* kNo = "No";
inline constexpr const char* kAttached = "Attached";
inline constexpr const char* kDetached = "Detached";

using ComponentCounts = std::map<std::string, int>;

// Scores return nullopt when the metric is undefined for the input.

// mean over categories of 1[pred > 0] * max(0, 1 - |pred - req| / max(1, req)).
// Missing counts are 0. Undefined for an empty category list.
std::optional<double> ScoreCn(const InstructionSpec& spec,
                              const ComponentCounts& predicted);

// Conf_Yes of the shape question.
double ScoreSf(const JudgeDecision& shape_decision);

// Mean Conf_Yes over attributes, one decision per attribute in spec order; a
// term is 0 when its target category has a predicted count of 0. Throws
// StructureError on a decision-count mismatch.
std::optional<double> ScoreAf(const InstructionSpec& spec,
                              const std::vector<JudgeDecision>& decisions,
                              const ComponentCounts& predicted);

// Mean Conf_Attached over connectivity pairs.
std::optional<double> ScoreCp(const InstructionSpec& spec,
                              const std::vector<JudgeDecision>& decisions);

// Mean Conf_Yes over relation triplets.
std::optional<double> ScoreVt(const InstructionSpec& spec,
                              const std::vector<JudgeDecision>& decisions);

struct TsOptions {
  bool largest_component = false;
};

struct TsDiagnostics {
  // Steps n (1-based) whose previous mask M(n-1) was empty.
  std::vector<int> empty_previous;
  std::vector<double> retention;  // per n = 2..N
};

// (1 / (N - 1)) * sum_{n=2..N} |M(n) & M(n-1)| / max(1, |M(n-1)|).
// Undefined for N < 2; throws ShapeError on mismatched dimensions.
std::optional<double> ScoreTs(const std::vector<BinaryMask>& masks,
                              const TsOptions& options = {},
                              TsDiagnostics* diagnostics = nullptr);

// Mean Conf_Yes over the step-pair decisions for n = 2..N. Undefined when
// there are none.
std::optional<double> ScoreRa(const std::vector<JudgeDecision>& decisions);

}  // namespace stepwise

#endif  // STEPWISE_METRICS_SCORES_H_
