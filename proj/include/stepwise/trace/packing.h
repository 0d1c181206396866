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

#ifndef STEPWISE_TRACE_PACKING_H_
#define STEPWISE_TRACE_PACKING_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stepwise/trace/tokens.h"

namespace stepwise {

inline constexpr std::int64_t kExpectedBatchTokens = 40000;
inline constexpr std::int64_t kHardCapTokens = 50000;
inline constexpr std::int64_t kLowWaterTokens = 20000;

struct PackingConfig {
  std::int64_t expected = kExpectedBatchTokens;
  std::int64_t cap = kHardCapTokens;
  std::int64_t low_water = kLowWaterTokens;
  // When set, fresh sequences are visited in a seeded shuffled order.
  std::optional<std::uint64_t> shuffle_seed;

  // Throws ConfigError unless 0 <= low_water <= expected <= cap and cap > 0.
  void Validate() const;
};

enum class PackEventKind { kFresh, kDefer, kOverflowDraw };

struct PackEvent {
  PackEventKind kind = PackEventKind::kFresh;
  std::string id;
  int batch = 0;
  std::int64_t total_before = 0;
  // Whether some buffered sequence fit the batch at this moment.
  bool overflow_had_fit = false;

  bool operator==(const PackEvent&) const = default;
};

struct PackingPlan {
  std::vector<std::vector<std::string>> batches;
  std::vector<std::int64_t> totals;
  std::vector<PackEvent> events;
  // Ids in the order they entered the overflow buffer.
  std::vector<std::string> overflow_log;

  nlohmann::json ToJson() const;
};

// Greedy fill toward `expected` per batch. A sequence that would push the
// batch past `cap` goes to a FIFO overflow buffer; while a batch holds fewer
// than `low_water` tokens, the first fitting buffered sequence is drawn
// before any fresh one. A batch closes once it reaches `expected` and the
// next candidate would not be taken, or when nothing left fits. Throws
// InvariantError for a sequence longer than `cap`.
PackingPlan PackBatches(const std::vector<TokenizedSequence>& sequences,
                        const PackingConfig& cfg = {});

}  // namespace stepwise

#endif  // STEPWISE_TRACE_PACKING_H_
