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

#include "stepwise/stats/tables.h"

#include <cstdio>

#include "stepwise/common/error.h"
#include "stepwise/common/file_io.h"
#include "stepwise/common/text.h"

namespace stepwise {
namespace {

double ParseNumber(const std::string& text, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    Throw(ErrorCode::kParse, "row " + std::to_string(line) + ": not a number: '" +
                                 text + "'");
  }
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string Cell(const StatValue& s) { return s.defined() ? Fixed(*s, 2) : "undef"; }

}  // namespace

std::size_t Table::Column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  Throw(ErrorCode::kParse, "table has no column '" + name + "'");
}

Table ParseTable(const std::string& text, std::optional<char> delimiter) {
  Table table;
  std::size_t line_no = 0;
  for (const std::string& raw : Split(text, '\n')) {
    ++line_no;
    const std::string line = Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (!delimiter) delimiter = line.find('\t') != std::string::npos ? '\t' : ',';
    std::vector<std::string> fields;
    for (const std::string& f : Split(line, *delimiter)) fields.push_back(Trim(f));
    if (table.header.empty()) {
      table.header = std::move(fields);
      continue;
    }
    if (fields.size() != table.header.size()) {
      Throw(ErrorCode::kParse, "line " + std::to_string(line_no) + ": " +
                                   std::to_string(fields.size()) + " fields, header has " +
                                   std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (table.header.empty()) Throw(ErrorCode::kParse, "table has no header row");
  return table;
}

Table ReadTableFile(const std::filesystem::path& path) {
  return ParseTable(ReadTextFile(path));
}

std::map<std::string, PairedScores> PairedScoresByMetric(const Table& table) {
  const std::size_t id = table.Column("id");
  const std::size_t metric = table.Column("metric");
  const std::size_t a = table.Column("score_a");
  const std::size_t b = table.Column("score_b");
  std::map<std::string, PairedScores> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    PairedScores& p = out[row[metric]];
    p.ids.push_back(row[id]);
    p.a.push_back(ParseNumber(row[a], r + 1));
    p.b.push_back(ParseNumber(row[b], r + 1));
  }
  return out;
}

std::map<std::string, RatingMatrix> RatingsByAspect(const Table& table,
                                                    int categories) {
  const std::size_t item = table.Column("item");
  const std::size_t aspect = table.Column("aspect");
  std::map<std::string, RatingMatrix> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    RatingMatrix& m = out[row[aspect]];
    m.categories = categories;
    std::vector<int> ratings;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c == item || c == aspect) continue;
      const double v = ParseNumber(row[c], r + 1);
      if (v != static_cast<int>(v)) {
        Throw(ErrorCode::kParse, "row " + std::to_string(r + 1) +
                                     ": rating is not an integer");
      }
      ratings.push_back(static_cast<int>(v));
    }
    m.ratings.push_back(std::move(ratings));
  }
  return out;
}

ConsistencyRow ComputeConsistency(const std::string& metric,
                                  const PairedScores& scores, int iters,
                                  std::uint64_t seed, int jobs) {
  scores.Validate();
  ConsistencyRow row;
  row.metric = metric;
  row.n = scores.a.size();
  row.spearman = Spearman(scores);
  row.kendall = Kendall(scores);
  const auto ya = Binarize(scores.a);
  const auto yb = Binarize(scores.b);
  row.agreement = RawAgreement(ya, yb);
  row.kappa = CohenKappa(ya, yb);
  row.ci = BootstrapStatistic(
      row.n,
      [&](const std::vector<std::size_t>& idx) -> std::optional<double> {
        PairedScores sample;
        for (std::size_t i : idx) {
          sample.a.push_back(scores.a[i]);
          sample.b.push_back(scores.b[i]);
        }
        return Spearman(sample).value;
      },
      iters, seed, jobs);
  return row;
}

std::string FormatConsistencyTable(const std::vector<ConsistencyRow>& rows,
                                   const std::optional<RankingStability>& ranking) {
  std::string out = "Metric\tSpearman rho\tKendall tau\tAgree (%)\tCohen kappa\t95% CI\n";
  for (const auto& r : rows) {
    out += r.metric + "\t" + Cell(r.spearman) + "\t" + Cell(r.kendall) + "\t" +
           Fixed(100 * r.agreement, 1) + "\t" + Cell(r.kappa) + "\t" +
           (r.ci ? "+-" + Fixed(r.ci->HalfWidth(), 2) : "undef") + "\n";
  }
  if (ranking) {
    out += "Method ranking\tRank tau: " + Cell(ranking->tau) + "\t\tTop-1 Match: " +
           (ranking->top1_match ? "100%" : "0%") + "\t\t--\n";
  }
  return out;
}

nlohmann::json ToJson(const ConsistencyRow& row) {
  nlohmann::json j{{"metric", row.metric},
                   {"n", row.n},
                   {"spearman", ToJson(row.spearman)},
                   {"kendall", ToJson(row.kendall)},
                   {"agreement", row.agreement},
                   {"cohen_kappa", ToJson(row.kappa)}};
  if (row.ci) {
    j["ci"] = {{"lo", row.ci->lo}, {"hi", row.ci->hi}, {"half_width", row.ci->HalfWidth()}};
  } else {
    j["ci"] = nullptr;
  }
  return j;
}

HumanEvalAspect SummarizeAspect(const std::string& aspect, const RatingMatrix& m,
                                int iters, std::uint64_t seed, int jobs) {
  m.Validate();
  HumanEvalAspect out;
  out.aspect = aspect;
  out.items = m.ratings.size();
  std::vector<double> prompt_scores;
  for (const auto& row : m.ratings) {
    double sum = 0;
    for (int r : row) sum += r;
    prompt_scores.push_back(sum / double(row.size()));
  }
  out.ci = BootstrapMeanCi(prompt_scores, iters, seed, jobs);
  out.fleiss = FleissKappa(m);
  return out;
}

std::string FormatHumanEvalTable(const std::vector<HumanEvalAspect>& aspects) {
  std::string out = "Aspect\tItems\tMean\t95% CI\tFleiss kappa\n";
  for (const auto& a : aspects) {
    out += a.aspect + "\t" + std::to_string(a.items) + "\t" +
           (a.ci ? Fixed(a.ci->estimate, 2) + "\t[" + Fixed(a.ci->lo, 2) + ", " +
                       Fixed(a.ci->hi, 2) + "]"
                 : "undef\tundef") +
           "\t" + Cell(a.fleiss) + "\n";
  }
  return out;
}

nlohmann::json ToJson(const HumanEvalAspect& a) {
  nlohmann::json j{{"aspect", a.aspect}, {"items", a.items}, {"fleiss_kappa", ToJson(a.fleiss)}};
  if (a.ci) {
    j["mean"] = a.ci->estimate;
    j["ci"] = {{"lo", a.ci->lo}, {"hi", a.ci->hi}};
  }
  return j;
}

}  // namespace stepwise
