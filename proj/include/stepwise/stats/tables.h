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

#ifndef STEPWISE_STATS_TABLES_H_
#define STEPWISE_STATS_TABLES_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stepwise/stats/agreement.h"
#include "stepwise/stats/bootstrap.h"
#include "stepwise/stats/correlation.h"

namespace stepwise {

// Delimiter-separated text with a header row. Fields are not quoted. Blank
// lines and lines starting with '#' are skipped.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Throws ParseError when the column is missing.
  std::size_t Column(const std::string& name) const;
};

// Delimiter defaults to tab when the header contains one, else comma.
Table ParseTable(const std::string& text, std::optional<char> delimiter = {});
Table ReadTableFile(const std::filesystem::path& path);

// Columns: id, metric, score_a, score_b. Rows keep file order per metric.
std::map<std::string, PairedScores> PairedScoresByMetric(const Table& table);

// Columns: item, aspect, then one column per rater.
std::map<std::string, RatingMatrix> RatingsByAspect(const Table& table,
                                                    int categories = 5);

struct ConsistencyRow {
  std::string metric;
  std::size_t n = 0;
  StatValue spearman;
  StatValue kendall;
  double agreement = 0;  // fraction
  StatValue kappa;
  // Bootstrap interval of Spearman rho over prompts.
  std::optional<ConfidenceInterval> ci;
};

ConsistencyRow ComputeConsistency(const std::string& metric,
                                  const PairedScores& scores,
                                  int iters = kDefaultBootstrapIters,
                                  std::uint64_t seed = 0, int jobs = 1);

// Tab-separated, two decimals, "undef" for undefined cells.
std::string FormatConsistencyTable(
    const std::vector<ConsistencyRow>& rows,
    const std::optional<RankingStability>& ranking = {});
nlohmann::json ToJson(const ConsistencyRow& row);

struct HumanEvalAspect {
  std::string aspect;
  std::size_t items = 0;
  // Over prompt-level scores (mean of each item's ratings).
  std::optional<ConfidenceInterval> ci;
  StatValue fleiss;
};

HumanEvalAspect SummarizeAspect(const std::string& aspect, const RatingMatrix& m,
                                int iters = kDefaultBootstrapIters,
                                std::uint64_t seed = 0, int jobs = 1);
std::string FormatHumanEvalTable(const std::vector<HumanEvalAspect>& aspects);
nlohmann::json ToJson(const HumanEvalAspect& aspect);

}  // namespace stepwise

#endif  // STEPWISE_STATS_TABLES_H_
