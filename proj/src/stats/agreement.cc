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

#include "stepwise/stats/agreement.h"

#include <algorithm>

#include "stepwise/common/error.h"
#include "stepwise/stats/correlation.h"

namespace stepwise {
namespace {

void CheckBinaryPair(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) Throw(ErrorCode::kShape, "label lists differ in length");
  if (a.empty()) Throw(ErrorCode::kRange, "label lists are empty");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] != 0 && a[i] != 1) || (b[i] != 0 && b[i] != 1)) {
      Throw(ErrorCode::kRange, "non-binary label at index " + std::to_string(i));
    }
  }
}

}  // namespace

std::vector<int> Binarize(const std::vector<double>& scores, double threshold) {
  std::vector<int> out;
  out.reserve(scores.size());
  for (double s : scores) out.push_back(s >= threshold ? 1 : 0);
  return out;
}

double RawAgreement(const std::vector<int>& a, const std::vector<int>& b) {
  CheckBinaryPair(a, b);
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i] == b[i];
  return double(same) / double(a.size());
}

StatValue CohenKappa(const std::vector<int>& a, const std::vector<int>& b) {
  const double po = RawAgreement(a, b);
  const double n = double(a.size());
  double pa = 0, pb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    pa += a[i];
    pb += b[i];
  }
  pa /= n;
  pb /= n;
  const double pe = pa * pb + (1 - pa) * (1 - pb);
  if (pe >= 1) return StatValue::Undefined("CONSTANT_RATERS");
  return StatValue::Of((po - pe) / (1 - pe));
}

void RatingMatrix::Validate() const {
  if (categories < 2) Throw(ErrorCode::kRange, "rating scale needs >= 2 categories");
  if (ratings.size() < 2) Throw(ErrorCode::kRange, "need at least 2 rated items");
  const std::size_t raters = ratings.front().size();
  if (raters < 2) Throw(ErrorCode::kRange, "need at least 2 raters per item");
  for (std::size_t i = 0; i < ratings.size(); ++i) {
    if (ratings[i].size() != raters) {
      Throw(ErrorCode::kShape, "item " + std::to_string(i) + " has " +
                                   std::to_string(ratings[i].size()) +
                                   " ratings, expected " + std::to_string(raters));
    }
    for (int r : ratings[i]) {
      if (r < 1 || r > categories) {
        Throw(ErrorCode::kRange, "rating " + std::to_string(r) + " outside 1.." +
                                     std::to_string(categories));
      }
    }
  }
}

StatValue FleissKappa(const RatingMatrix& m) {
  m.Validate();
  const double items = double(m.ratings.size());
  const double raters = double(m.ratings.front().size());
  std::vector<double> totals(static_cast<std::size_t>(m.categories), 0.0);
  double p_bar = 0;
  for (const auto& row : m.ratings) {
    std::vector<double> counts(totals.size(), 0.0);
    for (int r : row) counts[static_cast<std::size_t>(r - 1)] += 1;
    double agree = 0;
    for (std::size_t j = 0; j < counts.size(); ++j) {
      agree += counts[j] * (counts[j] - 1);
      totals[j] += counts[j];
    }
    p_bar += agree / (raters * (raters - 1));
  }
  p_bar /= items;
  double pe = 0;
  for (double t : totals) {
    const double pj = t / (items * raters);
    pe += pj * pj;
  }
  if (pe >= 1) return StatValue::Undefined("SINGLE_CATEGORY");
  return StatValue::Of((p_bar - pe) / (1 - pe));
}

std::vector<std::string> RankMethods(const std::map<std::string, double>& means) {
  std::vector<std::string> order;
  for (const auto& [name, mean] : means) order.push_back(name);
  // The map is name-ordered, so a stable sort breaks ties by name.
  std::stable_sort(order.begin(), order.end(), [&](const auto& x, const auto& y) {
    return means.at(x) > means.at(y);
  });
  return order;
}

RankingStability CompareRankings(const std::map<std::string, double>& a,
                                 const std::map<std::string, double>& b) {
  if (a.size() < 2) Throw(ErrorCode::kStructure, "need at least 2 methods");
  if (a.size() != b.size() ||
      !std::equal(a.begin(), a.end(), b.begin(),
                  [](const auto& x, const auto& y) { return x.first == y.first; })) {
    Throw(ErrorCode::kStructure, "method sets differ between rankings");
  }
  const auto rank_a = RankMethods(a);
  const auto rank_b = RankMethods(b);
  PairedScores p;
  for (const auto& [name, unused] : a) {
    p.ids.push_back(name);
    p.a.push_back(double(std::find(rank_a.begin(), rank_a.end(), name) - rank_a.begin()));
    p.b.push_back(double(std::find(rank_b.begin(), rank_b.end(), name) - rank_b.begin()));
  }
  RankingStability out;
  out.tau = Kendall(p);
  out.top1_match = rank_a.front() == rank_b.front();
  return out;
}

}  // namespace stepwise
