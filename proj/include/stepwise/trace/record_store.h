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

#ifndef STEPWISE_TRACE_RECORD_STORE_H_
#define STEPWISE_TRACE_RECORD_STORE_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stepwise/trace/record.h"
#include "stepwise/trace/split.h"

namespace stepwise {

// Column-major JSON container, one file per (category, split):
//   <root>/<Category>/<split>/<split>-00000-of-00001.json
// Image structs are {"bytes": base64, "path": relative path}; rows with
// fewer steps hold null in the trailing reasoning_image_k columns.
inline constexpr std::string_view kRecordFormat = "stepwise-columnar";
inline constexpr int kRecordFormatVersion = 1;

std::filesystem::path PartitionPath(const std::filesystem::path& root,
                                    const std::string& category,
                                    DataSplit split);

nlohmann::json RecordsToColumns(const std::vector<TraceRecord>& records,
                                const std::string& category, DataSplit split);
// Throws ParseError when a column is missing or ragged.
std::vector<TraceRecord> RecordsFromColumns(const nlohmann::json& table);

void WritePartition(const std::filesystem::path& root,
                    const std::string& category, DataSplit split,
                    const std::vector<TraceRecord>& records);

struct PartitionRead {
  std::vector<TraceRecord> records;
  std::vector<std::string> warnings;
};

// A missing partition reads as empty with a warning.
PartitionRead ReadPartition(const std::filesystem::path& root,
                            const std::string& category, DataSplit split);

// Writes every split of every category present in `split`, including empty
// partitions. Returns the files written.
std::vector<std::filesystem::path> WriteDataset(const std::filesystem::path& root,
                                                const DatasetSplit& split);

struct DatasetRead {
  std::map<std::string, DatasetSplit> by_category;
  std::vector<std::string> warnings;
};

DatasetRead ReadDataset(const std::filesystem::path& root);

}  // namespace stepwise

#endif  // STEPWISE_TRACE_RECORD_STORE_H_
