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

#include "stepwise/metrics/scores.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "stepwise/common/error.h"

namespace stepwise {
namespace {

void RequireCount(std::size_t items, std::size_t decisions, const char* what) {
  if (items != decisions) {
    Throw(ErrorCode::kStructure, std::string(what) + ": " +
                                     std::to_string(items) + " items but " +
                                     std::to_string(decisions) + " decisions");
  }
}

int Predicted(const ComponentCounts& counts, const std::string& name) {
  const auto it = counts.find(name);
  return it == counts.end() ? 0 : it->second;
}

std::optional<double> MeanConfidence(const std::vector<JudgeDecision>& decisions,
                                     const std::string& label) {
  if (decisions.empty()) return std::nullopt;
  double sum = 0.0;
  for (const JudgeDecision& d : decisions) sum += d.ConfidenceOf(label);
  return sum / static_cast<double>(decisions.size());
}

}  // namespace

std::optional<double> ScoreCn(const InstructionSpec& spec,
                              const ComponentCounts& predicted) {
  if (spec.categories.empty()) return std::nullopt;
  double sum = 0.0;
  for (const CategoryRequirement& c : spec.categories) {
    const int pred = Predicted(predicted, c.name);
    if (pred <= 0) continue;
    const double err = std::abs(pred - c.required) /
                       static_cast<double>(std::max(1, c.required));
    sum += std::max(0.0, 1.0 - err);
  }
  return sum / static_cast<double>(spec.categories.size());
}

double ScoreSf(const JudgeDecision& shape_decision) {
  return shape_decision.ConfidenceOf(kYes);
}

std::optional<double> ScoreAf(const InstructionSpec& spec,
                              const std::vector<JudgeDecision>& decisions,
                              const ComponentCounts& predicted) {
  RequireCount(spec.attributes.size(), decisions.size(), "AF");
  if (decisions.empty()) return std::nullopt;
  double sum = 0.0;
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    if (Predicted(predicted, spec.attributes[i].target) <= 0) continue;
    sum += decisions[i].ConfidenceOf(kYes);
  }
  return sum / static_cast<double>(decisions.size());
}

std::optional<double> ScoreCp(const InstructionSpec& spec,
                              const std::vector<JudgeDecision>& decisions) {
  RequireCount(spec.connectivity.size(), decisions.size(), "CP");
  return MeanConfidence(decisions, kAttached);
}

std::optional<double> ScoreVt(const InstructionSpec& spec,
                              const std::vector<JudgeDecision>& decisions) {
  RequireCount(spec.relations.size(), decisions.size(), "VT");
  return MeanConfidence(decisions, kYes);
}

std::optional<double> ScoreTs(const std::vector<BinaryMask>& masks,
                              const TsOptions& options,
                              TsDiagnostics* diagnostics) {
  if (masks.size() < 2) return std::nullopt;
  std::vector<BinaryMask> filtered;
  const std::vector<BinaryMask>* used = &masks;
  if (options.largest_component) {
    for (const BinaryMask& m : masks) {
      filtered.push_back(LargestConnectedComponent(m));
    }
    used = &filtered;
  }
  double sum = 0.0;
  for (std::size_t n = 1; n < used->size(); ++n) {
    const BinaryMask& prev = (*used)[n - 1];
    const BinaryMask& curr = (*used)[n];
    const std::int64_t inter = IntersectionArea(curr, prev);
    const std::int64_t prev_area = prev.area();
    const double ratio = static_cast<double>(inter) /
                         static_cast<double>(std::max<std::int64_t>(1, prev_area));
    if (diagnostics) {
      if (prev_area == 0) {
        diagnostics->empty_previous.push_back(static_cast<int>(n) + 1);
      }
      diagnostics->retention.push_back(ratio);
    }
    sum += ratio;
  }
  return sum / static_cast<double>(used->size() - 1);
}

std::optional<double> ScoreRa(const std::vector<JudgeDecision>& decisions) {
  return MeanConfidence(decisions, kYes);
}

}  // namespace stepwise
