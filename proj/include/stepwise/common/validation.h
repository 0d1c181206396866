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

#ifndef STEPWISE_COMMON_VALIDATION_H_
#define STEPWISE_COMMON_VALIDATION_H_

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace stepwise {

enum class Severity { kWarning, kError };

struct Issue {
  Severity severity = Severity::kError;
  std::string code;
  std::string message;
  std::optional<int> node_id;

  bool operator==(const Issue&) const = default;
};

// Report-style validation result. ok() holds iff no issue has error severity.
class ValidationReport {
 public:
  void AddError(std::string code, std::string message,
                std::optional<int> node_id = std::nullopt);
  void AddWarning(std::string code, std::string message,
                  std::optional<int> node_id = std::nullopt);
  void Merge(const ValidationReport& other);

  bool ok() const;
  bool HasCode(std::string_view code) const;
  int CountSeverity(Severity severity) const;

  const std::vector<Issue>& issues() const { return issues_; }

  nlohmann::json ToJson() const;

 private:
  std::vector<Issue> issues_;
};

}  // namespace stepwise

#endif  // STEPWISE_COMMON_VALIDATION_H_
