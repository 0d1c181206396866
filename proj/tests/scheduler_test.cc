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

#include <algorithm>
#include <climits>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "stepwise/asset/asset.h"
#include "stepwise/common/error.h"
#include "stepwise/common/text.h"
#include "stepwise/schedule/scheduler.h"
#include "test_util.h"

namespace stepwise {
namespace {

PartHierarchy FromTree(const nlohmann::json& tree, const std::string& cat = "Chair") {
  return ParseHierarchyJson({"t", cat, "0", "/tmp", IsKnownCategory(cat)}, tree);
}

nlohmann::json FlatTree(const std::vector<std::string>& names) {
  nlohmann::json root = {{"id", 0}, {"name", "root"}, {"children", nlohmann::json::array()}};
  for (std::size_t i = 0; i < names.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    root["children"].push_back(
        {{"id", id}, {"name", names[i]}, {"objs", {"m" + std::to_string(id)}}});
  }
  return root;
}

// Reference for the ordering rules, written as a keyword-by-keyword sweep.
std::vector<std::vector<int>> ReferenceSchedule(const PartHierarchy& h,
                                                const SchedulerConfig& cfg) {
  std::vector<std::string> keys;
  std::map<std::string, std::vector<int>> members;
  std::map<std::string, std::string> first_name;
  for (const PartNode& leaf : h.leaves) {
    const std::string key =
        cfg.symmetric_grouping ? NormalizeName(leaf.name) : std::to_string(leaf.node_id);
    if (!members.count(key)) {
      keys.push_back(key);
      first_name[key] = ToLower(leaf.name);
    }
    members[key].push_back(leaf.node_id);
  }
  std::vector<std::string> ordered;
  std::set<std::string> placed;
  for (const std::string& kw : cfg.priority_keywords) {
    for (const std::string& key : keys) {
      if (!placed.count(key) && first_name[key].find(kw) != std::string::npos) {
        ordered.push_back(key);
        placed.insert(key);
      }
    }
  }
  for (const std::string& key : keys) {
    if (!placed.count(key)) ordered.push_back(key);
  }
  const int cap = cfg.CapFor(h.meta.model_cat);
  std::vector<std::vector<int>> steps;
  for (const std::string& key : ordered) {
    const auto& m = members[key];
    for (std::size_t i = 0; i < m.size(); i += cap) {
      steps.emplace_back(m.begin() + i, m.begin() + std::min(m.size(), i + cap));
    }
  }
  return steps;
}

std::vector<std::vector<int>> Parts(const AssemblySchedule& s) {
  std::vector<std::vector<int>> out;
  for (const auto& step : s.steps) out.push_back(step.parts);
  return out;
}

TEST(BuildScheduleTest, SingleLeaf) {
  const auto h = FromTree({{"id", 9}, {"name", "body"}, {"objs", {"m"}}});
  const auto s = BuildSchedule(h, SchedulerConfig::Defaults());
  ASSERT_EQ(s.N(), 1);
  EXPECT_EQ(s.steps[0].parts, std::vector<int>{9});
  EXPECT_EQ(s.steps[0].index, 1);
}

TEST(BuildScheduleTest, ToyChairSteps) {
  const auto scan = ScanAndDedup(testing::ToyChairDir());
  const auto h = ParseHierarchy(scan.assets.at(0));
  const auto cfg = SchedulerConfig::Defaults();
  const auto s = BuildSchedule(h, cfg);
  const std::vector<std::vector<int>> expected = {{1}, {3, 4, 5, 6}, {7}, {8}};
  EXPECT_EQ(Parts(s), expected);
  EXPECT_EQ(Parts(s), ReferenceSchedule(h, cfg));
  EXPECT_EQ(s.steps[1].label, "leg");
  EXPECT_EQ(cfg.CapFor("Chair"), 15);
}

TEST(BuildScheduleTest, TwentyKeysCapFive) {
  const auto h = FromTree(FlatTree(std::vector<std::string>(20, "key")), "Keyboard");
  SchedulerConfig cfg = SchedulerConfig::Defaults();
  ApplyMaxBatchOverride(cfg, "Keyboard=5");
  const auto s = BuildSchedule(h, cfg);
  ASSERT_EQ(s.N(), 20 / 5);
  for (const auto& step : s.steps) EXPECT_EQ(step.parts.size(), 5u);
}

TEST(BuildScheduleTest, FoundationalPartsLead) {
  const auto h = FromTree(FlatTree({"leg", "seat", "frame", "leg", "base"}));
  const auto s = BuildSchedule(h, SchedulerConfig::Defaults());
  // base (keyword 0) then frame (keyword 1), then depth-first order.
  const std::vector<std::vector<int>> expected = {{5}, {3}, {1, 4}, {2}};
  EXPECT_EQ(Parts(s), expected);
}

TEST(BuildScheduleTest, GroupingCanBeDisabled) {
  const auto h = FromTree(FlatTree({"leg", "leg", "leg"}));
  SchedulerConfig cfg = SchedulerConfig::Defaults();
  cfg.symmetric_grouping = false;
  EXPECT_EQ(BuildSchedule(h, cfg).N(), 3);
}

TEST(BuildScheduleTest, MatchesReferenceAndPartitionsRandomTrees) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    SchedulerConfig cfg = SchedulerConfig::Defaults();
    cfg.fallback_max_batch = 1 + static_cast<int>(rng() % 8);
    cfg.symmetric_grouping = rng() % 4 != 0;
    const auto h = FromTree(testing::RandomTreeJson(rng, 1 + rng() % 120), "Lamp");
    const auto s = BuildSchedule(h, cfg);
    EXPECT_EQ(Parts(s), ReferenceSchedule(h, cfg));
    EXPECT_TRUE(ValidateSchedule(s, cfg).ok());

    std::set<int> seen;
    std::size_t total = 0;
    for (int n = 1; n <= s.N(); ++n) {
      const auto delta = DeltaParts(s, n);
      EXPECT_LE(static_cast<int>(delta.size()), cfg.CapFor("Lamp"));
      EXPECT_FALSE(delta.empty());
      total += delta.size();
      seen.insert(delta.begin(), delta.end());
      const auto before = CumulativeParts(s, n - 1);
      const auto after = CumulativeParts(s, n);
      EXPECT_LT(before.size(), after.size());
      EXPECT_TRUE(std::includes(after.begin(), after.end(), before.begin(), before.end()));
    }
    EXPECT_EQ(total, seen.size());
    EXPECT_EQ(seen, std::set<int>(s.leaf_ids.begin(), s.leaf_ids.end()));
    EXPECT_EQ(ToJson(BuildSchedule(h, cfg)).dump(), ToJson(s).dump());
  }
}

TEST(DeltaPartsTest, FirstStepAndRange) {
  const auto h = FromTree(FlatTree({"base", "leg", "leg"}));
  const auto s = BuildSchedule(h, SchedulerConfig::Defaults());
  EXPECT_EQ(DeltaParts(s, 1), CumulativeParts(s, 1));
  EXPECT_EQ(DeltaParts(s, 2), (std::set<int>{2, 3}));
  EXPECT_TRUE(CumulativeParts(s, 0).empty());
  for (int bad : {0, 3, -1}) {
    try {
      DeltaParts(s, bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kRange);
    }
  }
}

TEST(ValidateScheduleTest, DetectsViolations) {
  const auto h = FromTree(FlatTree({"leg", "leg", "leg", "leg", "leg", "leg", "leg"}),
                          "Scissors");
  SchedulerConfig cfg = SchedulerConfig::Defaults();
  AssemblySchedule s = BuildSchedule(h, cfg);
  EXPECT_TRUE(ValidateSchedule(s, cfg).ok());

  AssemblySchedule big = s;
  big.steps = {{1, {1, 2, 3, 4, 5, 6, 7}, "leg"}};
  EXPECT_TRUE(ValidateSchedule(big, cfg).HasCode("CAP_EXCEEDED"));

  AssemblySchedule dup = s;
  dup.steps[1].parts.push_back(dup.steps[0].parts[0]);
  const auto r = ValidateSchedule(dup, cfg);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(r.HasCode("PARTITION_VIOLATION"));

  AssemblySchedule missing = s;
  missing.steps.pop_back();
  EXPECT_TRUE(ValidateSchedule(missing, cfg).HasCode("PARTITION_VIOLATION"));

  AssemblySchedule empty = s;
  empty.steps.clear();
  EXPECT_TRUE(ValidateSchedule(empty, cfg).HasCode("EMPTY_SCHEDULE"));
}

TEST(ValidateScheduleTest, LateFoundationIsWarning) {
  const auto h = FromTree(FlatTree({"leg", "base"}));
  AssemblySchedule s = BuildSchedule(h, SchedulerConfig::Defaults());
  std::swap(s.steps[0].parts, s.steps[1].parts);
  const auto r = ValidateSchedule(s, SchedulerConfig::Defaults());
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.HasCode("FOUNDATION_ORDER"));
}

TEST(SchedulerConfigTest, ParsesKeyValueFile) {
  const auto cfg = ParseSchedulerConfig(
      "# caps\nfallback = 7\nmax_batch.Mug = 3  # small\n"
      "priority_keywords = Body, base\nsymmetric_grouping = false\n");
  EXPECT_EQ(cfg.fallback_max_batch, 7);
  EXPECT_EQ(cfg.CapFor("Mug"), 3);
  EXPECT_EQ(cfg.CapFor("Chair"), 15);
  EXPECT_EQ(cfg.CapFor("Knife"), 5);
  EXPECT_EQ(cfg.CapFor("Unlisted"), 7);
  EXPECT_EQ(cfg.priority_keywords, (std::vector<std::string>{"body", "base"}));
  EXPECT_FALSE(cfg.symmetric_grouping);
}

TEST(SchedulerConfigTest, ShippedConfigMatchesDefaults) {
  const auto cfg = LoadSchedulerConfig(testing::SourceDir() / "config" / "scheduler.conf");
  const auto d = SchedulerConfig::Defaults();
  EXPECT_EQ(cfg.max_batch_by_category, d.max_batch_by_category);
  EXPECT_EQ(cfg.fallback_max_batch, d.fallback_max_batch);
  EXPECT_EQ(cfg.priority_keywords, d.priority_keywords);
}

TEST(SchedulerConfigTest, RejectsBadInput) {
  EXPECT_THROW(ParseSchedulerConfig("fallback = 0"), Error);
  EXPECT_THROW(ParseSchedulerConfig("colour = red"), Error);
  EXPECT_THROW(ParseSchedulerConfig("no equals sign"), Error);
  SchedulerConfig cfg;
  EXPECT_THROW(ApplyMaxBatchOverride(cfg, "Chair"), Error);
  EXPECT_THROW(ApplyMaxBatchOverride(cfg, "Chair=-2"), Error);
}

TEST(ScheduleJsonTest, RoundTrip) {
  const auto scan = ScanAndDedup(testing::ToyChairDir());
  const auto s = BuildSchedule(ParseHierarchy(scan.assets.at(0)), SchedulerConfig::Defaults());
  EXPECT_EQ(ScheduleFromJson(ToJson(s)), s);
}

}  // namespace
}  // namespace stepwise
