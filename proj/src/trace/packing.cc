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

#include "stepwise/trace/packing.h"

#include <deque>
#include <list>
#include <random>

#include "stepwise/common/error.h"
#include "stepwise/common/random.h"

namespace stepwise {
namespace {

struct Item {
  std::string id;
  std::int64_t tokens;
};

}  // namespace

void PackingConfig::Validate() const {
  if (cap <= 0 || low_water < 0 || low_water > expected || expected > cap) {
    Throw(ErrorCode::kConfig,
          "packing needs 0 <= low_water <= expected <= cap, got " +
              std::to_string(low_water) + ", " + std::to_string(expected) +
              ", " + std::to_string(cap));
  }
}

nlohmann::json PackingPlan::ToJson() const {
  nlohmann::json events_json = nlohmann::json::array();
  for (const PackEvent& e : events) {
    const char* kind = e.kind == PackEventKind::kFresh   ? "fresh"
                       : e.kind == PackEventKind::kDefer ? "defer"
                                                         : "overflow_draw";
    events_json.push_back({{"kind", kind},
                           {"id", e.id},
                           {"batch", e.batch},
                           {"total_before", e.total_before},
                           {"overflow_had_fit", e.overflow_had_fit}});
  }
  return {{"batches", batches},
          {"totals", totals},
          {"events", events_json},
          {"overflow_log", overflow_log}};
}

PackingPlan PackBatches(const std::vector<TokenizedSequence>& sequences,
                        const PackingConfig& cfg) {
  cfg.Validate();
  std::vector<Item> order;
  order.reserve(sequences.size());
  for (const TokenizedSequence& s : sequences) {
    if (s.token_count > cfg.cap) {
      Throw(ErrorCode::kInvariant,
            "sequence '" + s.id + "' has " + std::to_string(s.token_count) +
                " tokens, above the cap of " + std::to_string(cfg.cap));
    }
    order.push_back({s.id, s.token_count});
  }
  if (cfg.shuffle_seed) {
    std::mt19937_64 rng(*cfg.shuffle_seed);
    Shuffle(order, rng);
  }
  std::deque<Item> fresh(order.begin(), order.end());
  std::list<Item> overflow;

  PackingPlan plan;
  std::vector<std::string> batch;
  std::int64_t total = 0;
  auto first_fit = [&]() {
    for (auto it = overflow.begin(); it != overflow.end(); ++it) {
      if (total + it->tokens <= cfg.cap) return it;
    }
    return overflow.end();
  };
  auto close = [&]() {
    plan.batches.push_back(std::move(batch));
    plan.totals.push_back(total);
    batch.clear();
    total = 0;
  };
  auto event = [&](PackEventKind kind, const std::string& id, bool had_fit) {
    plan.events.push_back({kind, id, static_cast<int>(plan.batches.size()),
                           total, had_fit});
  };

  while (!fresh.empty() || !overflow.empty()) {
    auto fit = first_fit();
    const bool had_fit = fit != overflow.end();
    if (total < cfg.low_water && had_fit) {
      event(PackEventKind::kOverflowDraw, fit->id, true);
      total += fit->tokens;
      batch.push_back(fit->id);
      overflow.erase(fit);
      continue;
    }
    if (fresh.empty()) {
      if ((total < cfg.expected || batch.empty()) && had_fit) {
        event(PackEventKind::kOverflowDraw, fit->id, true);
        total += fit->tokens;
        batch.push_back(fit->id);
        overflow.erase(fit);
      } else {
        close();
      }
      continue;
    }
    const Item& next = fresh.front();
    if (total + next.tokens <= cfg.cap) {
      if (total >= cfg.expected && !batch.empty()) {
        close();
        continue;
      }
      event(PackEventKind::kFresh, next.id, had_fit);
      total += next.tokens;
      batch.push_back(next.id);
      fresh.pop_front();
    } else {
      event(PackEventKind::kDefer, next.id, had_fit);
      plan.overflow_log.push_back(next.id);
      overflow.push_back(next);
      fresh.pop_front();
      if (total >= cfg.expected && !batch.empty()) close();
    }
  }
  if (!batch.empty()) close();
  return plan;
}

}  // namespace stepwise
