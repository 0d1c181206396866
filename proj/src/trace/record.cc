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

#include "stepwise/trace/record.h"

#include "stepwise/common/error.h"

namespace stepwise {
namespace {

constexpr std::string_view kPlaceholderOpen = "[reasoning_image_";

bool Consume(std::string_view& text, std::string_view token) {
  if (text.substr(0, token.size()) != token) return false;
  text.remove_prefix(token.size());
  return true;
}

[[noreturn]] void Malformed(std::string_view text, std::string_view what) {
  Throw(ErrorCode::kParse,
        std::string("reasoning trace: expected ") + std::string(what) +
            " near '" + std::string(text.substr(0, 40)) + "'");
}

}  // namespace

std::string ReasoningImageColumn(int k) {
  return std::string(kReasoningImagePrefix) + std::to_string(k);
}

std::string EscapeThought(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '&') {
      out += "&amp;";
    } else if (c == '<') {
      out += "&lt;";
    } else {
      out += c;
    }
  }
  return out;
}

std::string UnescapeThought(std::string_view text) {
  std::string out;
  for (std::size_t i = 0; i < text.size();) {
    if (text.substr(i, 5) == "&amp;") {
      out += '&';
      i += 5;
    } else if (text.substr(i, 4) == "&lt;") {
      out += '<';
      i += 4;
    } else {
      out += text[i++];
    }
  }
  return out;
}

std::string SerializeReasoningTrace(const std::vector<std::string>& thoughts) {
  std::string out;
  for (std::size_t i = 0; i < thoughts.size(); ++i) {
    if (i > 0) out += "\n";
    out += std::string(kThoughtOpen) + EscapeThought(thoughts[i]) +
           std::string(kThoughtClose) + "\n" + std::string(kImageStart) +
           std::string(kPlaceholderOpen) + std::to_string(i + 1) + "]" +
           std::string(kImageEnd);
  }
  return out;
}

ParsedReasoningTrace ParseReasoningTrace(std::string_view text) {
  ParsedReasoningTrace parsed;
  bool first = true;
  while (!text.empty()) {
    if (!first && !Consume(text, "\n")) Malformed(text, "newline");
    first = false;
    if (!Consume(text, kThoughtOpen)) Malformed(text, kThoughtOpen);
    const std::size_t close = text.find(kThoughtClose);
    if (close == std::string_view::npos) Malformed(text, kThoughtClose);
    const std::string_view body = text.substr(0, close);
    if (body.find('<') != std::string_view::npos) Malformed(body, "escaped text");
    parsed.thoughts.push_back(UnescapeThought(body));
    text.remove_prefix(close + kThoughtClose.size());
    if (!Consume(text, "\n")) Malformed(text, "newline");
    if (!Consume(text, kImageStart)) Malformed(text, kImageStart);
    if (!Consume(text, kPlaceholderOpen)) Malformed(text, "image placeholder");
    const std::size_t bracket = text.find(']');
    if (bracket == std::string_view::npos || bracket == 0) {
      Malformed(text, "placeholder index");
    }
    int index = 0;
    for (char c : text.substr(0, bracket)) {
      if (c < '0' || c > '9') Malformed(text, "placeholder index");
      index = index * 10 + (c - '0');
    }
    parsed.image_indices.push_back(index);
    text.remove_prefix(bracket + 1);
    if (!Consume(text, kImageEnd)) Malformed(text, kImageEnd);
  }
  return parsed;
}

TraceRecord SerializeRecord(const AssemblyTrace& trace) {
  TraceRecord record;
  record.model_id = trace.trace_id;
  record.category = trace.category;
  record.prompt = trace.goal.text;
  std::vector<std::string> thoughts;
  for (const TraceStep& step : trace.steps) {
    thoughts.push_back(step.rationale.text);
    record.reasoning_images.push_back(
        {step.image.Load(),
         trace.trace_id + "/step_" + std::to_string(step.n) + ".png"});
  }
  record.reasoning_trace = SerializeReasoningTrace(thoughts);
  record.final_answer = std::string(kFinalAnswer);
  if (trace.final_image) {
    record.final_image = {trace.final_image->Load(),
                          trace.trace_id + "/final_complete.png"};
  } else if (!trace.steps.empty()) {
    record.final_image = {trace.steps.back().image.Load(),
                          trace.trace_id + "/final_complete.png"};
  }
  return record;
}

void CheckRecord(const TraceRecord& record) {
  if (record.final_answer != kFinalAnswer) {
    Throw(ErrorCode::kStructure, "final answer is not the termination marker");
  }
  const ParsedReasoningTrace parsed = ParseReasoningTrace(record.reasoning_trace);
  if (parsed.image_indices.size() != record.reasoning_images.size()) {
    Throw(ErrorCode::kStructure,
          std::to_string(parsed.image_indices.size()) + " placeholders but " +
              std::to_string(record.reasoning_images.size()) + " images");
  }
  for (std::size_t i = 0; i < parsed.image_indices.size(); ++i) {
    if (parsed.image_indices[i] != static_cast<int>(i) + 1) {
      Throw(ErrorCode::kStructure, "placeholder " + std::to_string(i + 1) +
                                       " is numbered " +
                                       std::to_string(parsed.image_indices[i]));
    }
  }
}

}  // namespace stepwise
