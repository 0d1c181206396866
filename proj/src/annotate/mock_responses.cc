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

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "stepwise/annotate/chat_client.h"
#include "stepwise/annotate/templates.h"
#include "stepwise/common/text.h"

namespace stepwise {
namespace {

std::uint64_t KeyBits(const ChatRequest& request) {
  const std::string hex = request.CacheKey().substr(0, 16);
  return std::stoull(hex, nullptr, 16);
}

// Lines following `header` up to the next blank line.
std::vector<std::string> SectionLines(const std::string& text,
                                      std::string_view header) {
  std::vector<std::string> lines;
  const std::size_t at = text.find(header);
  if (at == std::string::npos) return lines;
  std::istringstream in(text.substr(at + header.size()));
  std::string line;
  std::getline(in, line);  // rest of the header line
  while (std::getline(in, line)) {
    const std::string trimmed = Trim(line);
    if (trimmed.empty()) break;
    lines.push_back(trimmed);
  }
  return lines;
}

// "leg (x4)" -> "four legs", "seat" -> "seat".
std::string Humanize(const std::string& entry) {
  static constexpr std::string_view kWords[] = {
      "zero", "one", "two", "three", "four", "five", "six",
      "seven", "eight", "nine", "ten", "eleven", "twelve"};
  const std::string item = Trim(entry);
  const std::size_t open = item.rfind(" (x");
  if (open == std::string::npos || item.back() != ')') return item;
  const int count = std::stoi(item.substr(open + 3));
  const std::string word = count >= 0 && count <= 12
                               ? std::string(kWords[count])
                               : std::to_string(count);
  return word + " " + item.substr(0, open) + "s";
}

std::string HumanizeList(const std::string& summary) {
  std::vector<std::string> items;
  for (const std::string& entry : Split(summary, ',')) {
    if (!Trim(entry).empty()) items.push_back(Humanize(entry));
  }
  std::string joined;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) joined += (i + 1 == items.size()) ? " and " : ", ";
    joined += items[i];
  }
  return joined;
}

std::string CotResponse(const std::string& prompt) {
  int n = 1;
  int total = 1;
  std::string object = "object";
  const std::string marker = "Generate a concise description for Step ";
  const std::size_t at = prompt.find(marker);
  if (at != std::string::npos) {
    std::istringstream in(prompt.substr(at + marker.size()));
    std::string of;
    std::string in_word;
    std::string building;
    std::string article;
    in >> n >> of >> total >> in_word >> building >> article;
    std::getline(in, object);
    object = Trim(object);
    if (!object.empty() && object.back() == '.') object.pop_back();
  }
  const auto added = SectionLines(prompt, "New parts added in this step:");
  const auto existing = SectionLines(prompt, "Existing parts (already added):");
  const std::string parts =
      added.empty() ? "new parts" : HumanizeList(added.front());
  const std::string anchor = existing.empty() || existing.front() == "None"
                                 ? ""
                                 : Humanize(Split(existing.front(), ',').back());
  if (total <= 1) {
    return "Position the " + parts + " upright at the center to form the complete " +
           object + ".";
  }
  if (n == 1) {
    return "First, position the " + parts +
           " upright at the center as the starting piece of the " + object + ".";
  }
  const std::string transition =
      n == total ? "Finally" : (n == 2 ? "Next" : "Then");
  return transition + ", attach the " + parts + " to the " + Trim(anchor) +
         " of the partially built " + object + ".";
}

std::string GoalResponse(const std::string& prompt) {
  const auto parts = SectionLines(
      prompt, "Below is the complete list of final components of the finished "
              "3D object:");
  std::vector<std::string> items;
  for (const std::string& line : parts) {
    std::string item = line;
    if (StartsWith(item, "- ")) item = item.substr(2);
    const bool counted = item.find(" (x") != std::string::npos;
    item = Humanize(item);
    if (!counted) {
      const bool vowel = std::string_view("aeiou").find(item[0]) !=
                         std::string_view::npos;
      item = (vowel ? "an " : "a ") + item;
    }
    items.push_back(item);
  }
  if (items.empty()) return "Build a simple object.";
  std::string joined;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) joined += (i + 1 == items.size()) ? ", and " : ", ";
    joined += items[i];
  }
  return "Build an object with " + joined + ".";
}

ChatResponse ForcedChoiceResponse(const ChatRequest& request,
                                  const std::string& positive,
                                  const std::string& negative) {
  const std::uint64_t bits = KeyBits(request);
  // Winning logscore in [-1, 0], losing one in [-4, -1]. The positive
  // option wins three requests in four.
  const double win = -static_cast<double>(bits % 101) / 100.0;
  const double lose = -1.0 - static_cast<double>((bits >> 8) % 301) / 100.0;
  const bool positive_wins = (bits >> 20) % 4 != 0;
  const std::string& answer = positive_wins ? positive : negative;
  ChatResponse response;
  const int score = 50 + static_cast<int>((bits >> 32) % 50);
  response.text = "Final Verdict:\n   - Answer: " + answer +
                  "\n   - Confidence Score: " + std::to_string(score) + "%";
  TokenLogprob token;
  token.token = answer;
  token.logprob = win;
  token.top = {{answer, win}, {positive_wins ? negative : positive, lose}};
  response.logprobs.push_back(std::move(token));
  return response;
}

}  // namespace

ChatResponse MockChatClient::DefaultResponse(const ChatRequest& request) {
  const std::string& prompt = request.UserText();
  const std::string& id = request.template_id;
  ChatResponse response;
  if (id == kCotTemplate) {
    response.text = CotResponse(prompt);
  } else if (id == kGoalTemplate) {
    response.text = GoalResponse(prompt);
  } else if (id == kJudgeCountTemplate) {
    const std::uint64_t bits = KeyBits(request);
    response.text =
        "{\"count\": " + std::to_string(1 + bits % 4) + "}";
  } else if (id == kJudgeCpTemplate) {
    return ForcedChoiceResponse(request, "Attached", "Detached");
  } else if (StartsWith(id, "judge_")) {
    return ForcedChoiceResponse(request, "Yes", "No");
  } else {
    response.text = "mock response " + request.CacheKey().substr(0, 12);
  }
  return response;
}

}  // namespace stepwise
