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

#include "stepwise/stats/prf.h"

#include "stepwise/common/error.h"

namespace stepwise {

Prf PrecisionRecallF1(long tp, long fp, long fn) {
  if (tp < 0 || fp < 0 || fn < 0) {
    Throw(ErrorCode::kRange, "precision/recall counts must be non-negative");
  }
  Prf out;
  out.precision = tp + fp > 0 ? StatValue::Of(double(tp) / double(tp + fp))
                              : StatValue::Undefined("NO_PREDICTIONS");
  out.recall = tp + fn > 0 ? StatValue::Of(double(tp) / double(tp + fn))
                           : StatValue::Undefined("NO_POSITIVES");
  if (out.precision.defined() && out.recall.defined()) {
    out.f1 = F1FromPr(*out.precision, *out.recall);
  } else {
    out.f1 = StatValue::Undefined("UNDEFINED_PR");
  }
  return out;
}

StatValue F1FromPr(double precision, double recall) {
  if (precision + recall <= 0) return StatValue::Undefined("ZERO_PR");
  return StatValue::Of(2 * precision * recall / (precision + recall));
}

}  // namespace stepwise
