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

#include "stepwise/stats/bootstrap.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "stepwise/common/error.h"
#include "stepwise/common/parallel.h"
#include "stepwise/common/random.h"

namespace stepwise {

double NearestRank(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) Throw(ErrorCode::kRange, "percentile of empty list");
  if (!(p > 0 && p <= 100)) Throw(ErrorCode::kRange, "percentile outside (0, 100]");
  const double rank = std::ceil(p / 100.0 * double(sorted.size()) - 1e-9);
  const std::size_t index =
      std::clamp<std::size_t>(static_cast<std::size_t>(rank), 1, sorted.size());
  return sorted[index - 1];
}

std::optional<ConfidenceInterval> BootstrapStatistic(
    std::size_t n, const IndexStatistic& statistic, int iters,
    std::uint64_t seed, int jobs) {
  if (n == 0) return std::nullopt;
  if (iters < 1) Throw(ErrorCode::kRange, "bootstrap needs at least 1 iteration");
  std::vector<std::size_t> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  const std::optional<double> estimate = statistic(identity);
  if (!estimate) return std::nullopt;

  std::vector<std::optional<double>> draws(static_cast<std::size_t>(iters));
  ParallelFor(draws.size(), jobs, [&](std::size_t i) {
    std::mt19937_64 rng(DeriveSeed(seed, i));
    std::vector<std::size_t> sample(n);
    for (auto& s : sample) s = UniformBelow(rng, n);
    draws[i] = statistic(sample);
  });
  std::vector<double> values;
  values.reserve(draws.size());
  for (const auto& d : draws) {
    if (d) values.push_back(*d);
  }
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  ConfidenceInterval ci;
  ci.estimate = *estimate;
  ci.lo = NearestRank(values, 2.5);
  ci.hi = NearestRank(values, 97.5);
  ci.valid_iters = static_cast<int>(values.size());
  return ci;
}

std::optional<ConfidenceInterval> BootstrapMeanCi(
    const std::vector<double>& values, int iters, std::uint64_t seed,
    int jobs) {
  return BootstrapStatistic(
      values.size(),
      [&](const std::vector<std::size_t>& idx) -> std::optional<double> {
        double sum = 0;
        for (std::size_t i : idx) sum += values[i];
        return sum / double(idx.size());
      },
      iters, seed, jobs);
}

}  // namespace stepwise
