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

#include "stepwise/trace/tokens.h"

#include <algorithm>

#include "stepwise/common/error.h"
#include "stepwise/common/text.h"

namespace stepwise {

std::int64_t GenerationTokensPerImage(int width, int height,
                                      const TokenConfig& cfg) {
  const int stride = cfg.vae_downsample * cfg.patch_size;
  if (stride < 1) Throw(ErrorCode::kConfig, "token stride must be positive");
  if (width < 1 || height < 1 || width % stride != 0 || height % stride != 0) {
    Throw(ErrorCode::kConfig, "image size " + std::to_string(width) + "x" +
                                  std::to_string(height) +
                                  " is not divisible by " +
                                  std::to_string(stride));
  }
  return static_cast<std::int64_t>(width / stride) * (height / stride);
}

std::int64_t TrainingTokensPerImage(int width, int height,
                                    const TokenConfig& cfg) {
  return 2 * GenerationTokensPerImage(width, height, cfg) +
         cfg.understanding_tokens;
}

std::int64_t DefaultTextTokenCount(std::string_view text) {
  const auto words = static_cast<std::int64_t>(SplitWhitespace(text).size());
  return (words * 13 + 9) / 10;
}

void TokenizedSequence::Recount() {
  token_count = 0;
  for (const Segment& s : segments) token_count += s.tokens;
}

TokenizedSequence MakeSequence(std::string id,
                               std::vector<std::int64_t> segment_tokens) {
  TokenizedSequence seq;
  seq.id = std::move(id);
  for (std::int64_t t : segment_tokens) {
    seq.segments.push_back({SegmentKind::kText, t});
  }
  seq.Recount();
  return seq;
}

TokenizedSequence TokenizeRecord(const TraceRecord& record, int image_width,
                                 int image_height,
                                 const TextTokenCounter& count_text,
                                 const TokenConfig& cfg) {
  const std::int64_t image_tokens =
      TrainingTokensPerImage(image_width, image_height, cfg);
  TokenizedSequence seq;
  seq.id = record.model_id;
  seq.segments.push_back({SegmentKind::kText, count_text(record.prompt)});
  const ParsedReasoningTrace parsed = ParseReasoningTrace(record.reasoning_trace);
  for (const std::string& thought : parsed.thoughts) {
    seq.segments.push_back({SegmentKind::kText, 2 + count_text(thought)});
    seq.segments.push_back({SegmentKind::kImage, 2 + image_tokens});
  }
  std::string_view answer = record.final_answer;
  if (answer.substr(0, kAssemblyOpen.size()) == kAssemblyOpen) {
    answer.remove_prefix(kAssemblyOpen.size());
  }
  if (answer.size() >= kAssemblyClose.size() &&
      answer.substr(answer.size() - kAssemblyClose.size()) == kAssemblyClose) {
    answer.remove_suffix(kAssemblyClose.size());
  }
  seq.segments.push_back({SegmentKind::kText, 2 + count_text(answer)});
  seq.Recount();
  return seq;
}

TokenizedSequence Truncate(const TokenizedSequence& sequence,
                           std::int64_t cap) {
  if (cap < 0) Throw(ErrorCode::kConfig, "negative token cap");
  TokenizedSequence out = sequence;
  out.Recount();
  std::int64_t excess = out.token_count - cap;
  while (excess > 0 && !out.segments.empty()) {
    Segment& last = out.segments.back();
    const std::int64_t cut = std::min(excess, last.tokens);
    last.tokens -= cut;
    excess -= cut;
    if (last.tokens == 0) out.segments.pop_back();
  }
  out.Recount();
  return out;
}

}  // namespace stepwise
