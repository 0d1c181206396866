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

#include "stepwise/cli/options.h"

#include "stepwise/common/error.h"
#include "stepwise/common/text.h"

namespace stepwise {

SchedulerConfig RunOptions::LoadScheduler() const {
  SchedulerConfig cfg = scheduler_config.empty()
                            ? SchedulerConfig::Defaults()
                            : LoadSchedulerConfig(scheduler_config);
  for (const std::string& spec : max_batch) ApplyMaxBatchOverride(cfg, spec);
  cfg.Validate();
  return cfg;
}

nlohmann::json RunOptions::ToJson() const {
  nlohmann::json view_names = nlohmann::json::array();
  for (ViewId v : views) view_names.push_back(ViewName(v));
  return {
      {"workdir", workdir.string()},
      {"input", input.string()},
      {"seed", seed},
      {"jobs", jobs},
      {"strict", strict},
      {"scheduler_config", scheduler_config.string()},
      {"max_batch", max_batch},
      {"renderer", renderer},
      {"blender", blender},
      {"adapter", adapter.string()},
      {"render",
       {{"width", render.width},
        {"height", render.height},
        {"samples", render.samples},
        {"y_up_input", render.y_up_input}}},
      {"views", view_names},
      {"annotator", annotator},
      {"judge", judge},
      {"endpoint",
       {{"base_url", endpoint.base_url},
        {"path", endpoint.path},
        {"model", endpoint.model},
        {"credential_env", endpoint.credential_env},
        {"timeout_s", endpoint.timeout_s},
        {"max_retries", endpoint.max_retries},
        {"max_in_flight", endpoint.max_in_flight},
        {"requests_per_second", endpoint.requests_per_second}}},
      {"use_cache", use_cache},
      {"self_consistency", self_consistency},
      {"votes", votes},
      {"largest_component", largest_component},
      {"packing",
       {{"expected", packing.expected},
        {"cap", packing.cap},
        {"low_water", packing.low_water},
        {"shuffle", shuffle_packing}}},
      {"split_manifest", split_manifest.string()},
      {"spec_file", spec_file.string()},
  };
}

std::vector<ViewId> ParseViewList(const std::string& text) {
  std::vector<ViewId> out;
  for (const std::string& raw : Split(text, ',')) {
    const std::string name = Trim(raw);
    if (name.empty()) continue;
    const auto view = ParseViewId(name);
    if (!view) Throw(ErrorCode::kUsage, "unknown view '" + name + "'");
    if (std::find(out.begin(), out.end(), *view) == out.end()) out.push_back(*view);
  }
  if (out.empty()) Throw(ErrorCode::kUsage, "--views needs at least one view");
  return out;
}

}  // namespace stepwise
