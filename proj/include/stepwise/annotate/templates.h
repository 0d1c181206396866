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

#ifndef STEPWISE_ANNOTATE_TEMPLATES_H_
#define STEPWISE_ANNOTATE_TEMPLATES_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace stepwise {

// Ids of the prompt templates compiled from assets/templates.
inline constexpr std::string_view kCotTemplate = "cot_generation";
inline constexpr std::string_view kGoalTemplate = "goal_prompt";
inline constexpr std::string_view kJudgeSystemTemplate = "judge_system";
inline constexpr std::string_view kJudgeSfTemplate = "judge_sf";
inline constexpr std::string_view kJudgeAfTemplate = "judge_af";
inline constexpr std::string_view kJudgeCpTemplate = "judge_cp";
inline constexpr std::string_view kJudgeVtTemplate = "judge_vt";
inline constexpr std::string_view kJudgeCountTemplate = "judge_count";
inline constexpr std::string_view kJudgeRaTemplate = "judge_ra";

std::vector<std::string> TemplateIds();

// Template text without its final newline. Throws NotFound for unknown ids.
std::string_view TemplateText(std::string_view id);

// Substitutes "{name}" for every slot. Placeholders without a slot stay as
// they are.
std::string FillTemplate(std::string_view text,
                         const std::map<std::string, std::string>& slots);

// Placeholder names appearing in `text`, sorted and unique. Only identifiers
// made of letters, digits and '_' count, so JSON braces are skipped.
std::vector<std::string> TemplatePlaceholders(std::string_view text);

}  // namespace stepwise

#endif  // STEPWISE_ANNOTATE_TEMPLATES_H_
