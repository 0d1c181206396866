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

#ifndef STEPWISE_ANNOTATE_ANNOTATOR_H_
#define STEPWISE_ANNOTATE_ANNOTATOR_H_

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stepwise/annotate/chat_client.h"
#include "stepwise/common/hash.h"
#include "stepwise/common/validation.h"

namespace stepwise {

struct GoalPrompt {
  std::string text;
  std::string source;  // client id
  std::string request_key;

  bool operator==(const GoalPrompt&) const = default;
};

struct RationaleSlots {
  std::optional<std::string> action_verb;
  std::optional<std::string> new_parts;
  std::optional<std::string> preposition;
  std::optional<std::string> anchor;

  bool operator==(const RationaleSlots&) const = default;
};

struct StepRationale {
  int step = 1;
  std::string text;
  RationaleSlots slots;
  std::string source;
  std::string request_key;

  bool operator==(const StepRationale&) const = default;
};

nlohmann::json ToJson(const GoalPrompt& goal);
nlohmann::json ToJson(const StepRationale& rationale);
GoalPrompt GoalPromptFromJson(const nlohmann::json& j);
StepRationale StepRationaleFromJson(const nlohmann::json& j);

struct StepSummary {
  int step = 0;
  std::vector<std::string> part_names;
};

// "base, leg (x4), seat" in first-seen order of normalized names.
std::string SummarizeNames(const std::vector<std::string>& names);

// Transition word required for step n of N: "" for a single-step trace,
// then First / Next / Then / Finally.
std::string ExpectedTransition(int n, int total);
// The {step_note} slot of the rationale template.
std::string StepNote(int n, int total);

ChatRequest BuildGoalRequest(const std::optional<Bytes>& final_png,
                             const std::vector<std::string>& part_names,
                             const std::vector<StepSummary>& steps,
                             const std::string& model = "");

// Trims the response. Throws Error(kEmptyAnnotation) when nothing is left.
GoalPrompt GenerateGoalPrompt(const std::optional<Bytes>& final_png,
                              const std::vector<std::string>& part_names,
                              const std::vector<StepSummary>& steps,
                              ChatClient& client, const std::string& model = "");

struct RationaleInput {
  int step = 1;
  int total_steps = 1;
  std::string object_type;
  std::string prompt_text;
  std::vector<std::string> existing_names;
  std::vector<std::string> delta_names;
  std::optional<Bytes> previous_png;  // absent for step 1
  Bytes current_png;
};

// Throws RangeError unless 1 <= step <= total_steps.
ChatRequest BuildRationaleRequest(const RationaleInput& input,
                                  const std::string& model = "");

StepRationale GenerateStepRationale(const RationaleInput& input,
                                    ChatClient& client,
                                    const std::string& model = "");

// Extracts (action verb, new parts, preposition, anchor) from the first
// clause after an optional transition word.
RationaleSlots ParseSlots(const std::string& text);

inline constexpr int kMinRationaleWords = 10;
inline constexpr int kMaxRationaleWords = 20;

// Errors: EMPTY_TEXT, PART_NOT_IN_DELTA. Warnings: LENGTH, TRANSITION,
// MISSING_SLOT.
ValidationReport ValidateRationale(const StepRationale& rationale,
                                   const std::vector<std::string>& delta_names,
                                   int n, int total);

}  // namespace stepwise

#endif  // STEPWISE_ANNOTATE_ANNOTATOR_H_
