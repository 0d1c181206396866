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

#ifndef STEPWISE_TRACE_RECORD_H_
#define STEPWISE_TRACE_RECORD_H_

#include <string>
#include <string_view>
#include <vector>

#include "stepwise/common/hash.h"
#include "stepwise/trace/trace.h"

namespace stepwise {

inline constexpr std::string_view kThoughtOpen = "<thought>";
inline constexpr std::string_view kThoughtClose = "</thought>";
inline constexpr std::string_view kImageStart = "<image_start>";
inline constexpr std::string_view kImageEnd = "<image_end>";
inline constexpr std::string_view kAssemblyOpen = "<assembly>";
inline constexpr std::string_view kAssemblyClose = "</assembly>";
inline constexpr std::string_view kFinalAnswer =
    "<assembly>Final Assembly: FINISH</assembly>";

// Column names of the record schema.
inline constexpr std::string_view kPromptColumn = "Prompt";
inline constexpr std::string_view kTraceColumn =
    "Shape of Thought Reasoning Trace";
inline constexpr std::string_view kFinalAssemblyColumn = "Final Assembly";
inline constexpr std::string_view kReasoningImagePrefix = "reasoning_image_";
inline constexpr std::string_view kFinalImageColumn = "final_image";
inline constexpr std::string_view kModelIdColumn = "model_id";

std::string ReasoningImageColumn(int k);

struct ImageField {
  Bytes bytes;
  std::string path;  // relative to the dataset root

  bool operator==(const ImageField&) const = default;
};

struct TraceRecord {
  std::string model_id;
  std::string category;
  std::string prompt;
  std::string reasoning_trace;
  std::string final_answer;
  std::vector<ImageField> reasoning_images;  // reasoning_image_1..N
  ImageField final_image;

  bool operator==(const TraceRecord&) const = default;
};

// Escapes '&' and '<' so thought text cannot contain markers.
std::string EscapeThought(std::string_view text);
std::string UnescapeThought(std::string_view text);

// One block per step:
//   <thought>z_n</thought>
//   <image_start>[reasoning_image_n]<image_end>
std::string SerializeReasoningTrace(const std::vector<std::string>& thoughts);

struct ParsedReasoningTrace {
  std::vector<std::string> thoughts;
  std::vector<int> image_indices;
};

// Inverse of SerializeReasoningTrace. Throws ParseError on malformed input.
ParsedReasoningTrace ParseReasoningTrace(std::string_view text);

// Loads image bytes and builds the record. Image paths are
// "<model_id>/step_{n}.png" and "<model_id>/final_complete.png".
TraceRecord SerializeRecord(const AssemblyTrace& trace);

// Checks N placeholders numbered 1..N, matching image fields, and the exact
// final marker. Throws StructureError.
void CheckRecord(const TraceRecord& record);

}  // namespace stepwise

#endif  // STEPWISE_TRACE_RECORD_H_
