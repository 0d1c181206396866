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

#include "stepwise/stats/correlation.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "stepwise/common/error.h"

namespace stepwise {
namespace {

// Number of tied pairs implied by runs of equal values in a sorted sequence.
template <typename It, typename Eq>
std::int64_t TiedPairs(It begin, It end, Eq eq) {
  std::int64_t pairs = 0;
  for (It run = begin; run != end;) {
    It next = run + 1;
    while (next != end && eq(*run, *next)) ++next;
    const std::int64_t len = next - run;
    pairs += len * (len - 1) / 2;
    run = next;
  }
  return pairs;
}

// Stable merge sort of `v` that returns the number of inversions.
std::int64_t SortCountingSwaps(std::vector<double>& v) {
  std::vector<double> buffer(v.size());
  std::int64_t swaps = 0;
  for (std::size_t width = 1; width < v.size(); width *= 2) {
    for (std::size_t lo = 0; lo < v.size(); lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, v.size());
      const std::size_t hi = std::min(lo + 2 * width, v.size());
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (v[j] < v[i]) {
          swaps += static_cast<std::int64_t>(mid - i);
          buffer[k++] = v[j++];
        } else {
          buffer[k++] = v[i++];
        }
      }
      while (i < mid) buffer[k++] = v[i++];
      while (j < hi) buffer[k++] = v[j++];
    }
    std::swap(v, buffer);
  }
  return swaps;
}

}  // namespace

void PairedScores::Validate() const {
  if (a.size() != b.size()) {
    Throw(ErrorCode::kShape, "paired score lists differ in length: " +
                                 std::to_string(a.size()) + " vs " +
                                 std::to_string(b.size()));
  }
  if (!ids.empty() && ids.size() != a.size()) {
    Throw(ErrorCode::kShape, "id list length does not match scores");
  }
  if (a.size() < 2) Throw(ErrorCode::kRange, "need at least 2 paired scores");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i]) || !std::isfinite(b[i])) {
      Throw(ErrorCode::kRange, "non-finite score at index " + std::to_string(i));
    }
  }
}

std::vector<double> AverageRanks(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return values[x] < values[y];
  });
  std::vector<double> ranks(values.size());
  for (std::size_t run = 0; run < order.size();) {
    std::size_t next = run + 1;
    while (next < order.size() && values[order[next]] == values[order[run]]) ++next;
    const double avg = (double(run + 1) + double(next)) / 2.0;
    for (std::size_t k = run; k < next; ++k) ranks[order[k]] = avg;
    run = next;
  }
  return ranks;
}

StatValue Pearson(const std::vector<double>& a, const std::vector<double>& b) {
  PairedScores{{}, a, b}.Validate();
  const double n = double(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0 || sbb == 0) return StatValue::Undefined("ZERO_VARIANCE");
  return StatValue::Of(std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0));
}

StatValue Spearman(const PairedScores& p) {
  p.Validate();
  return Pearson(AverageRanks(p.a), AverageRanks(p.b));
}

StatValue Kendall(const PairedScores& p) {
  p.Validate();
  const std::size_t n = p.a.size();
  std::vector<std::pair<double, double>> pairs(n);
  for (std::size_t i = 0; i < n; ++i) pairs[i] = {p.a[i], p.b[i]};
  std::sort(pairs.begin(), pairs.end());

  const std::int64_t n0 = std::int64_t(n) * std::int64_t(n - 1) / 2;
  const std::int64_t ties_a = TiedPairs(
      pairs.begin(), pairs.end(),
      [](const auto& x, const auto& y) { return x.first == y.first; });
  const std::int64_t ties_ab =
      TiedPairs(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
        return x.first == y.first && x.second == y.second;
      });
  std::vector<double> bs(n);
  for (std::size_t i = 0; i < n; ++i) bs[i] = pairs[i].second;
  const std::int64_t swaps = SortCountingSwaps(bs);
  const std::int64_t ties_b =
      TiedPairs(bs.begin(), bs.end(), [](double x, double y) { return x == y; });

  if (ties_a == n0 || ties_b == n0) return StatValue::Undefined("ZERO_VARIANCE");
  // Concordant minus discordant pairs.
  const std::int64_t s = n0 - ties_a - ties_b + ties_ab - 2 * swaps;
  const double denom = std::sqrt(double(n0 - ties_a) * double(n0 - ties_b));
  return StatValue::Of(std::clamp(double(s) / denom, -1.0, 1.0));
}

}  // namespace stepwise
