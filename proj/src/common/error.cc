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

#include "stepwise/common/error.h"

namespace stepwise {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kRange: return "RangeError";
    case ErrorCode::kStructure: return "StructureError";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kInvariant: return "InvariantError";
    case ErrorCode::kNumeric: return "NumericError";
    case ErrorCode::kShape: return "ShapeError";
    case ErrorCode::kEndpoint: return "EndpointError";
    case ErrorCode::kJudgeFormat: return "JudgeFormatError";
    case ErrorCode::kEmptyAnnotation: return "EmptyAnnotation";
    case ErrorCode::kUsage: return "UsageError";
  }
  return "UnknownError";
}

}  // namespace stepwise
