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

#include "stepwise/common/validation.h"

#include <algorithm>

namespace stepwise {

void ValidationReport::AddError(std::string code, std::string message,
                                std::optional<int> node_id) {
  issues_.push_back(
      {Severity::kError, std::move(code), std::move(message), node_id});
}

void ValidationReport::AddWarning(std::string code, std::string message,
                                  std::optional<int> node_id) {
  issues_.push_back(
      {Severity::kWarning, std::move(code), std::move(message), node_id});
}

void ValidationReport::Merge(const ValidationReport& other) {
  issues_.insert(issues_.end(), other.issues_.begin(), other.issues_.end());
}

bool ValidationReport::ok() const {
  return CountSeverity(Severity::kError) == 0;
}

bool ValidationReport::HasCode(std::string_view code) const {
  return std::any_of(issues_.begin(), issues_.end(),
                     [&](const Issue& issue) { return issue.code == code; });
}

int ValidationReport::CountSeverity(Severity severity) const {
  return static_cast<int>(
      std::count_if(issues_.begin(), issues_.end(), [&](const Issue& issue) {
        return issue.severity == severity;
      }));
}

nlohmann::json ValidationReport::ToJson() const {
  nlohmann::json out;
  out["ok"] = ok();
  out["issues"] = nlohmann::json::array();
  for (const Issue& issue : issues_) {
    nlohmann::json entry = {
        {"severity", issue.severity == Severity::kError ? "error" : "warning"},
        {"code", issue.code},
        {"message", issue.message},
    };
    if (issue.node_id) entry["node_id"] = *issue.node_id;
    out["issues"].push_back(std::move(entry));
  }
  return out;
}

}  // namespace stepwise
