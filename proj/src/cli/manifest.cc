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

#include "stepwise/cli/manifest.h"

#include <algorithm>

#include "stepwise/common/file_io.h"
#include "stepwise/common/hash.h"
#include "stepwise/common/text.h"

namespace stepwise {

std::vector<FileHash> HashFiles(const fs::path& root,
                                const std::vector<fs::path>& files) {
  std::vector<FileHash> out;
  for (const fs::path& f : files) {
    std::string rel = fs::relative(f, root).generic_string();
    if (rel.empty() || StartsWith(rel, "..")) rel = f.generic_string();
    out.push_back({rel, Sha256Hex(ReadBinaryFile(f))});
  }
  std::sort(out.begin(), out.end(),
            [](const FileHash& a, const FileHash& b) { return a.path < b.path; });
  return out;
}

std::string CombinedHash(const std::vector<FileHash>& files) {
  std::string text;
  for (const FileHash& f : files) text += f.path + "\t" + f.sha256 + "\n";
  return Sha256Hex(text);
}

nlohmann::json RunManifest::ToJson() const {
  nlohmann::json stage_list = nlohmann::json::array();
  for (const StageRecord& s : stages) {
    nlohmann::json outputs = nlohmann::json::array();
    for (const FileHash& f : s.outputs) {
      outputs.push_back({{"path", f.path}, {"sha256", f.sha256}});
    }
    nlohmann::json j = {{"name", s.name},
                        {"status", s.status},
                        {"seconds", s.seconds},
                        {"outputs", outputs},
                        {"output_hash", s.output_hash},
                        {"summary", s.summary}};
    if (!s.error.empty()) j["error"] = s.error;
    stage_list.push_back(std::move(j));
  }
  return {{"config", config}, {"paths", paths}, {"seeds", seeds}, {"stages", stage_list}};
}

}  // namespace stepwise
