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

#ifndef STEPWISE_CLI_MANIFEST_H_
#define STEPWISE_CLI_MANIFEST_H_

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace stepwise {

struct FileHash {
  std::string path;  // relative to the workdir
  std::string sha256;
};

// Sorted by path. Paths outside `root` are kept as given.
std::vector<FileHash> HashFiles(const std::filesystem::path& root,
                                const std::vector<std::filesystem::path>& files);
// sha256 over "path\tsha256\n" lines.
std::string CombinedHash(const std::vector<FileHash>& files);

struct StageRecord {
  std::string name;
  std::string status;  // "ok", "failed" or "skipped"
  double seconds = 0;
  std::vector<FileHash> outputs;
  std::string output_hash;
  nlohmann::json summary;
  std::string error;
};

struct RunManifest {
  nlohmann::json config;
  nlohmann::json paths;
  nlohmann::json seeds;
  std::vector<StageRecord> stages;

  nlohmann::json ToJson() const;
};

}  // namespace stepwise

#endif  // STEPWISE_CLI_MANIFEST_H_
