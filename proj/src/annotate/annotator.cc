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

#include "stepwise/annotate/annotator.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>

#include "stepwise/annotate/templates.h"
#include "stepwise/common/error.h"
#include "stepwise/common/text.h"

namespace stepwise {
namespace {

constexpr std::array<std::string_view, 4> kTransitions = {"first", "next",
                                                          "then", "finally"};

constexpr std::array<std::string_view, 30> kActionVerbs = {
    "add",      "affix",    "align",   "arrange", "assemble", "attach",
    "build",    "complete", "connect", "construct", "create", "extend",
    "fasten",   "fit",      "fix",     "insert",  "install",  "integrate",
    "join",     "lay",      "mount",   "place",   "position", "put",
    "secure",   "set",      "slide",   "stack",   "rest",     "form"};

constexpr std::array<std::string_view, 26> kPrepositions = {
    "to",      "onto",    "on",     "above",   "below",  "under",
    "beneath", "underneath", "into", "inside", "at",     "between",
    "along",   "around",  "atop",   "behind",  "beside", "across",
    "against", "over",    "in",     "upon",    "near",   "alongside",
    "within",  "through"};

template <std::size_t K>
bool Contains(const std::array<std::string_view, K>& list,
              std::string_view word) {
  return std::find(list.begin(), list.end(), word) != list.end();
}

std::string StripPunct(std::string_view word) {
  std::string out;
  for (char c : word) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') {
      out += c;
    }
  }
  return ToLower(out);
}

std::string JoinOrNone(const std::vector<std::string>& names) {
  return names.empty() ? "None" : SummarizeNames(names);
}

}  // namespace

nlohmann::json ToJson(const GoalPrompt& goal) {
  return {{"text", goal.text},
          {"source", goal.source},
          {"request_key", goal.request_key}};
}

nlohmann::json ToJson(const StepRationale& rationale) {
  auto opt = [](const std::optional<std::string>& v) -> nlohmann::json {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  return {{"step", rationale.step},
          {"text", rationale.text},
          {"slots",
           {{"action_verb", opt(rationale.slots.action_verb)},
            {"new_parts", opt(rationale.slots.new_parts)},
            {"preposition", opt(rationale.slots.preposition)},
            {"anchor", opt(rationale.slots.anchor)}}},
          {"source", rationale.source},
          {"request_key", rationale.request_key}};
}

GoalPrompt GoalPromptFromJson(const nlohmann::json& j) {
  try {
    return {j.at("text").get<std::string>(), j.value("source", ""),
            j.value("request_key", "")};
  } catch (const nlohmann::json::exception& e) {
    Throw(ErrorCode::kParse, std::string("goal prompt: ") + e.what());
  }
}

StepRationale StepRationaleFromJson(const nlohmann::json& j) {
  auto opt = [&](const char* key) -> std::optional<std::string> {
    const auto& slots = j.at("slots");
    if (!slots.contains(key) || slots.at(key).is_null()) return std::nullopt;
    return slots.at(key).get<std::string>();
  };
  try {
    StepRationale r;
    r.step = j.at("step").get<int>();
    r.text = j.at("text").get<std::string>();
    if (j.contains("slots")) {
      r.slots = {opt("action_verb"), opt("new_parts"), opt("preposition"),
                 opt("anchor")};
    }
    r.source = j.value("source", "");
    r.request_key = j.value("request_key", "");
    return r;
  } catch (const nlohmann::json::exception& e) {
    Throw(ErrorCode::kParse, std::string("step rationale: ") + e.what());
  }
}

std::string SummarizeNames(const std::vector<std::string>& names) {
  std::vector<std::string> order;
  std::map<std::string, int> counts;
  std::map<std::string, std::string> display;
  for (const std::string& name : names) {
    std::string key = NormalizeName(name);
    if (key.empty()) key = ToLower(Trim(name));
    if (counts[key]++ == 0) {
      order.push_back(key);
      display[key] = key.empty() ? name : key;
    }
  }
  std::vector<std::string> parts;
  for (const std::string& key : order) {
    const int count = counts[key];
    parts.push_back(count > 1 ? display[key] + " (x" + std::to_string(count) + ")"
                              : display[key]);
  }
  return Join(parts, ", ");
}

std::string ExpectedTransition(int n, int total) {
  if (total <= 1) return "";
  if (n == 1) return "First";
  if (n == total) return "Finally";
  if (n == 2) return "Next";
  return "Then";
}

std::string StepNote(int n, int total) {
  if (total <= 1) {
    return "This is the only step: describe the parts directly with no "
           "transition word.";
  }
  return "Start the description with \"" + ExpectedTransition(n, total) + "\".";
}

ChatRequest BuildGoalRequest(const std::optional<Bytes>& final_png,
                             const std::vector<std::string>& part_names,
                             const std::vector<StepSummary>& steps,
                             const std::string& model) {
  std::string parts_text;
  for (const std::string& entry : Split(SummarizeNames(part_names), ',')) {
    const std::string item = Trim(entry);
    if (item.empty()) continue;
    if (!parts_text.empty()) parts_text += "\n";
    parts_text += "- " + item;
  }
  std::string construction = "Construction steps:";
  for (const StepSummary& s : steps) {
    construction += "\nStep " + std::to_string(s.step) + ": " +
                    SummarizeNames(s.part_names);
  }
  const std::string note =
      final_png ? "A rendering of the final assembled object is attached as a "
                  "visual reference."
                : "No rendering is available; rely on the parts list and the "
                  "construction steps.";
  ChatRequest request;
  request.template_id = std::string(kGoalTemplate);
  request.model = model;
  ChatMessage message;
  message.role = "user";
  message.text = FillTemplate(TemplateText(kGoalTemplate),
                              {{"parts_text", parts_text},
                               {"construction_steps", construction},
                               {"visual_reference_note", note}});
  if (final_png) message.images.push_back(*final_png);
  request.messages.push_back(std::move(message));
  return request;
}

GoalPrompt GenerateGoalPrompt(const std::optional<Bytes>& final_png,
                              const std::vector<std::string>& part_names,
                              const std::vector<StepSummary>& steps,
                              ChatClient& client, const std::string& model) {
  const ChatRequest request =
      BuildGoalRequest(final_png, part_names, steps, model);
  const ChatResponse response = client.Complete(request);
  GoalPrompt goal{Trim(response.text), client.id(), request.CacheKey()};
  if (goal.text.empty()) {
    Throw(ErrorCode::kEmptyAnnotation, "empty goal prompt response");
  }
  return goal;
}

ChatRequest BuildRationaleRequest(const RationaleInput& input,
                                  const std::string& model) {
  if (input.total_steps < 1 || input.step < 1 ||
      input.step > input.total_steps) {
    Throw(ErrorCode::kRange, "step " + std::to_string(input.step) +
                                 " outside 1.." +
                                 std::to_string(input.total_steps));
  }
  ChatRequest request;
  request.template_id = std::string(kCotTemplate);
  request.model = model;
  ChatMessage message;
  message.role = "user";
  message.text = FillTemplate(
      TemplateText(kCotTemplate),
      {{"step_number", std::to_string(input.step)},
       {"total_steps", std::to_string(input.total_steps)},
       {"object_type", input.object_type},
       {"prompt_text", input.prompt_text},
       {"existing_parts", JoinOrNone(input.existing_names)},
       {"new_parts", JoinOrNone(input.delta_names)},
       {"step_note", StepNote(input.step, input.total_steps)}});
  if (input.previous_png) message.images.push_back(*input.previous_png);
  message.images.push_back(input.current_png);
  request.messages.push_back(std::move(message));
  return request;
}

StepRationale GenerateStepRationale(const RationaleInput& input,
                                    ChatClient& client,
                                    const std::string& model) {
  const ChatRequest request = BuildRationaleRequest(input, model);
  const ChatResponse response = client.Complete(request);
  StepRationale rationale;
  rationale.step = input.step;
  rationale.text = Trim(response.text);
  if (rationale.text.empty()) {
    Throw(ErrorCode::kEmptyAnnotation,
          "empty rationale for step " + std::to_string(input.step));
  }
  rationale.slots = ParseSlots(rationale.text);
  rationale.source = client.id();
  rationale.request_key = request.CacheKey();
  return rationale;
}

RationaleSlots ParseSlots(const std::string& text) {
  // First clause: up to the first period or semicolon.
  std::string clause = text.substr(0, text.find_first_of(".;"));
  std::vector<std::string> raw = SplitWhitespace(clause);
  std::size_t i = 0;
  if (i < raw.size() && Contains(kTransitions, StripPunct(raw[i]))) ++i;

  RationaleSlots slots;
  std::size_t verb_at = raw.size();
  for (std::size_t k = i; k < raw.size(); ++k) {
    if (Contains(kActionVerbs, StripPunct(raw[k]))) {
      verb_at = k;
      break;
    }
  }
  if (verb_at == raw.size()) return slots;
  slots.action_verb = StripPunct(raw[verb_at]);

  std::size_t prep_at = raw.size();
  for (std::size_t k = verb_at + 1; k < raw.size(); ++k) {
    if (Contains(kPrepositions, StripPunct(raw[k]))) {
      prep_at = k;
      break;
    }
  }
  std::vector<std::string> parts(raw.begin() + verb_at + 1,
                                 raw.begin() + prep_at);
  if (!parts.empty()) slots.new_parts = Join(parts, " ");
  if (prep_at < raw.size()) {
    slots.preposition = StripPunct(raw[prep_at]);
    std::vector<std::string> anchor;
    for (std::size_t k = prep_at + 1; k < raw.size(); ++k) {
      anchor.push_back(raw[k]);
      if (raw[k].back() == ',') break;
    }
    std::string joined = Join(anchor, " ");
    while (!joined.empty() && (joined.back() == ',' || joined.back() == '.')) {
      joined.pop_back();
    }
    if (!joined.empty()) slots.anchor = joined;
  }
  return slots;
}

ValidationReport ValidateRationale(const StepRationale& rationale,
                                   const std::vector<std::string>& delta_names,
                                   int n, int total) {
  ValidationReport report;
  const std::string text = Trim(rationale.text);
  if (text.empty()) {
    report.AddError("EMPTY_TEXT", "rationale text is empty");
    return report;
  }
  const std::vector<std::string> words = SplitWhitespace(text);
  const int count = static_cast<int>(words.size());
  if (count < kMinRationaleWords || count > kMaxRationaleWords) {
    report.AddWarning("LENGTH", std::to_string(count) +
                                    " words, expected " +
                                    std::to_string(kMinRationaleWords) + "-" +
                                    std::to_string(kMaxRationaleWords));
  }
  const std::string expected = ExpectedTransition(n, total);
  const std::string opening = StripPunct(words.front());
  if (!expected.empty() && opening != ToLower(expected)) {
    report.AddWarning("TRANSITION", "expected opening \"" + expected +
                                        "\" for step " + std::to_string(n) +
                                        " of " + std::to_string(total));
  }

  const RationaleSlots slots = ParseSlots(text);
  if (!slots.action_verb) report.AddWarning("MISSING_SLOT", "no action verb");
  if (!slots.preposition) {
    report.AddWarning("MISSING_SLOT", "no attachment preposition");
  } else if (!slots.anchor) {
    report.AddWarning("MISSING_SLOT", "no anchor location");
  }
  if (!slots.new_parts) {
    report.AddWarning("MISSING_SLOT", "no new-parts phrase");
    return report;
  }
  std::set<std::string> mentioned;
  for (const std::string& w : NormalizedWords(*slots.new_parts)) {
    mentioned.insert(w);
  }
  bool matched = false;
  for (const std::string& name : delta_names) {
    for (const std::string& w : NormalizedWords(name)) {
      if (w.size() >= 3 && mentioned.count(w)) matched = true;
    }
  }
  if (!matched) {
    report.AddError("PART_NOT_IN_DELTA",
                    "\"" + *slots.new_parts +
                        "\" names no part added in step " + std::to_string(n));
  }
  return report;
}

}  // namespace stepwise
