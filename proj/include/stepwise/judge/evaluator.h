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

#ifndef STEPWISE_JUDGE_EVALUATOR_H_
#define STEPWISE_JUDGE_EVALUATOR_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stepwise/common/hash.h"
#include "stepwise/judge/gateway.h"
#include "stepwise/metrics/report.h"
#include "stepwise/render/image.h"

namespace stepwise {

struct EvalInputs {
  std::string trace_id;
  std::string goal;
  // Replaces instruction parsing when set.
  std::optional<InstructionSpec> spec_override;
  // v_N per view; each view present here is evaluated.
  std::map<ViewId, Bytes> final_images;
  // v_1..v_N per view, for RA.
  std::map<ViewId, std::vector<Bytes>> step_images;
  // z_1..z_N.
  std::vector<std::string> rationales;
  // M(1..N) per view, for TS, with their source files when known.
  std::map<ViewId, std::vector<BinaryMask>> masks;
  std::map<ViewId, std::vector<std::string>> mask_paths;
};

struct EvalOptions {
  bool self_consistency = false;
  int votes = kDefaultVotes;
  TsOptions ts;
  int jobs = 1;
};

// Query builders, exposed for tests.
JudgeQuery ShapeQuery(const std::string& goal, const InstructionSpec& spec,
                      const Bytes& image);
JudgeQuery AttributeQuery(const AttributeItem& item, const Bytes& image);
JudgeQuery ConnectivityQuery(const ConnectivityPair& pair, const Bytes& image);
JudgeQuery RelationQuery(const RelationTriplet& relation, const Bytes& image);
JudgeQuery RationaleQuery(const std::string& rationale, const Bytes& previous,
                          const Bytes& current);

// Scores every view in `final_images` and aggregates across views. Metrics
// without items or with too few steps are recorded as not applicable.
MetricReport Evaluate(const EvalInputs& inputs, JudgeGateway& gateway,
                      const EvalOptions& options = {});

}  // namespace stepwise

#endif  // STEPWISE_JUDGE_EVALUATOR_H_
