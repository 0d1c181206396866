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

#ifndef STEPWISE_COMMON_FILE_IO_H_
#define STEPWISE_COMMON_FILE_IO_H_

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "stepwise/common/hash.h"

namespace stepwise {

namespace fs = std::filesystem;

// All readers throw Error(kNotFound) for missing paths and Error(kIo) for
// other failures; messages carry the path.
std::string ReadTextFile(const fs::path& path);
Bytes ReadBinaryFile(const fs::path& path);
nlohmann::json ReadJsonFile(const fs::path& path);

// Writes to a sibling temp file and renames it into place, creating parent
// directories as needed.
void WriteFileAtomic(const fs::path& path, std::string_view contents);
void WriteFileAtomic(const fs::path& path, std::span<const std::uint8_t> data);

// Pretty-printed with sorted keys so equal values give equal bytes.
void WriteJsonFile(const fs::path& path, const nlohmann::json& value);

}  // namespace stepwise

#endif  // STEPWISE_COMMON_FILE_IO_H_
