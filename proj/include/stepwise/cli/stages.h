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

#ifndef STEPWISE_CLI_STAGES_H_
#define STEPWISE_CLI_STAGES_H_

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stepwise/annotate/chat_client.h"
#include "stepwise/cli/options.h"
#include "stepwise/cli/workspace.h"

namespace stepwise {

struct StageOutput {
  nlohmann::json summary = nlohmann::json::object();
  std::vector<std::filesystem::path> files;
};

// Inputs for the stats subcommand. Empty paths are ignored; with none set it
// summarizes eval/summary.json.
struct StatsInputs {
  std::filesystem::path paired;
  std::filesystem::path ranking;
  std::filesystem::path ratings;
  std::filesystem::path prf;
  int iters = 10000;
};

struct AuditInputs {
  std::filesystem::path run_a;  // defaults to eval/summary.json
  std::filesystem::path run_b;
  int top = 10;
};

// Clients for annotation and judging, wrapped in the on-disk cache unless
// caching is disabled.
std::shared_ptr<ChatClient> MakeChatClient(const std::string& kind,
                                           const RunOptions& options,
                                           const std::filesystem::path& cache_dir,
                                           const std::string& suffix);

StageOutput RunCurate(const RunOptions& options, const Workspace& ws);
StageOutput RunSchedule(const RunOptions& options, const Workspace& ws);
StageOutput RunRender(const RunOptions& options, const Workspace& ws);
StageOutput RunAnnotate(const RunOptions& options, const Workspace& ws);
StageOutput RunPack(const RunOptions& options, const Workspace& ws);
StageOutput RunSplit(const RunOptions& options, const Workspace& ws);
// A non-empty `only_id` restricts evaluation to that trace.
StageOutput RunEval(const RunOptions& options, const Workspace& ws,
                    const std::string& only_id = "");
StageOutput RunStats(const RunOptions& options, const Workspace& ws,
                     const StatsInputs& inputs);
StageOutput RunAudit(const RunOptions& options, const Workspace& ws,
                     const AuditInputs& inputs);

}  // namespace stepwise

#endif  // STEPWISE_CLI_STAGES_H_
