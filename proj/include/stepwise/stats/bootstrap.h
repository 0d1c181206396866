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

#ifndef STEPWISE_STATS_BOOTSTRAP_H_
#define STEPWISE_STATS_BOOTSTRAP_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace stepwise {

inline constexpr int kDefaultBootstrapIters = 10000;

struct ConfidenceInterval {
  double estimate = 0;
  double lo = 0;
  double hi = 0;
  int valid_iters = 0;

  double HalfWidth() const { return (hi - lo) / 2; }
};

// Nearest-rank percentile of sorted values, p in (0, 100].
double NearestRank(const std::vector<double>& sorted, double p);

// Resample indices of [0, n) with replacement `iters` times. Iteration i draws
// from its own stream DeriveSeed(seed, i), so results do not depend on `jobs`.
// Iterations where `statistic` is undefined are skipped. Returns nullopt when
// none is defined. The estimate is statistic(identity).
using IndexStatistic =
    std::function<std::optional<double>(const std::vector<std::size_t>&)>;
std::optional<ConfidenceInterval> BootstrapStatistic(
    std::size_t n, const IndexStatistic& statistic, int iters,
    std::uint64_t seed, int jobs = 1);

// 2.5/97.5 percentile interval of the resampled mean; estimate = sample mean.
// Undefined (nullopt) for empty input.
std::optional<ConfidenceInterval> BootstrapMeanCi(
    const std::vector<double>& values, int iters = kDefaultBootstrapIters,
    std::uint64_t seed = 0, int jobs = 1);

}  // namespace stepwise

#endif  // STEPWISE_STATS_BOOTSTRAP_H_
