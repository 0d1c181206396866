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

#ifndef STEPWISE_TRACE_TOKENS_H_
#define STEPWISE_TRACE_TOKENS_H_

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "stepwise/trace/record.h"

namespace stepwise {

struct TokenConfig {
  int vae_downsample = 8;
  int patch_size = 2;
  // Understanding (ViT) tokens per image.
  std::int64_t understanding_tokens = 1024;
};

// (w / (downsample * patch)) * (h / (downsample * patch)). Throws
// ConfigError unless both dimensions divide evenly.
std::int64_t GenerationTokensPerImage(int width, int height,
                                      const TokenConfig& cfg = {});

// Training-time block per image: noised and clean latent copies plus the
// understanding tokens.
std::int64_t TrainingTokensPerImage(int width, int height,
                                    const TokenConfig& cfg = {});

using TextTokenCounter = std::function<std::int64_t(std::string_view)>;

// ceil(1.3 * whitespace tokens).
std::int64_t DefaultTextTokenCount(std::string_view text);

enum class SegmentKind { kText, kImage };

struct Segment {
  SegmentKind kind = SegmentKind::kText;
  std::int64_t tokens = 0;

  bool operator==(const Segment&) const = default;
};

struct TokenizedSequence {
  std::string id;
  std::vector<Segment> segments;
  std::int64_t token_count = 0;

  // Sets token_count to the segment sum.
  void Recount();
  bool operator==(const TokenizedSequence&) const = default;
};

// Sequence of explicit segment sizes; convenient for packing inputs.
TokenizedSequence MakeSequence(std::string id,
                               std::vector<std::int64_t> segment_tokens);

// Prompt text, then per step a thought segment and an image segment, then
// the final answer. Each modality marker counts as one token.
TokenizedSequence TokenizeRecord(const TraceRecord& record, int image_width,
                                 int image_height,
                                 const TextTokenCounter& count_text =
                                     DefaultTextTokenCount,
                                 const TokenConfig& cfg = {});

// Drops tokens from the end until token_count <= cap; emptied segments are
// removed.
TokenizedSequence Truncate(const TokenizedSequence& sequence, std::int64_t cap);

}  // namespace stepwise

#endif  // STEPWISE_TRACE_TOKENS_H_
