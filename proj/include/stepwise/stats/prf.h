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

#ifndef STEPWISE_STATS_PRF_H_
#define STEPWISE_STATS_PRF_H_

#include "stepwise/stats/stat_value.h"

namespace stepwise {

struct Prf {
  StatValue precision;
  StatValue recall;
  StatValue f1;
};

// Fractions in [0, 1]. Throws RangeError for negative counts.
Prf PrecisionRecallF1(long tp, long fp, long fn);

// 2PR / (P + R) in whatever unit P and R use; undefined when P + R = 0.
StatValue F1FromPr(double precision, double recall);

}  // namespace stepwise

#endif  // STEPWISE_STATS_PRF_H_
