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

#include "stepwise/trace/record_store.h"

#include <algorithm>
#include <set>

#include "stepwise/common/error.h"
#include "stepwise/common/file_io.h"
#include "stepwise/common/hash.h"

namespace stepwise {
namespace {

nlohmann::json ImageJson(const ImageField& image) {
  return {{"bytes", Base64Encode(image.bytes)}, {"path", image.path}};
}

ImageField ImageFromJson(const nlohmann::json& j) {
  return {Base64Decode(j.at("bytes").get<std::string>()),
          j.at("path").get<std::string>()};
}

const nlohmann::json& Column(const nlohmann::json& columns,
                             std::string_view name, std::size_t rows) {
  const std::string key(name);
  if (!columns.contains(key) || !columns[key].is_array()) {
    Throw(ErrorCode::kParse, "record table has no column '" + key + "'");
  }
  if (columns[key].size() != rows) {
    Throw(ErrorCode::kParse, "column '" + key + "' has " +
                                 std::to_string(columns[key].size()) +
                                 " rows, expected " + std::to_string(rows));
  }
  return columns[key];
}

}  // namespace

std::filesystem::path PartitionPath(const std::filesystem::path& root,
                                    const std::string& category,
                                    DataSplit split) {
  const std::string name(SplitName(split));
  return root / category / name / (name + "-00000-of-00001.json");
}

nlohmann::json RecordsToColumns(const std::vector<TraceRecord>& records,
                                const std::string& category, DataSplit split) {
  std::size_t max_images = 0;
  for (const TraceRecord& r : records) {
    max_images = std::max(max_images, r.reasoning_images.size());
  }
  nlohmann::json columns = nlohmann::json::object();
  auto& ids = columns[std::string(kModelIdColumn)] = nlohmann::json::array();
  auto& prompts = columns[std::string(kPromptColumn)] = nlohmann::json::array();
  auto& traces = columns[std::string(kTraceColumn)] = nlohmann::json::array();
  auto& finals =
      columns[std::string(kFinalAssemblyColumn)] = nlohmann::json::array();
  auto& final_images =
      columns[std::string(kFinalImageColumn)] = nlohmann::json::array();
  for (std::size_t k = 1; k <= max_images; ++k) {
    columns[ReasoningImageColumn(static_cast<int>(k))] = nlohmann::json::array();
  }
  for (const TraceRecord& r : records) {
    ids.push_back(r.model_id);
    prompts.push_back(r.prompt);
    traces.push_back(r.reasoning_trace);
    finals.push_back(r.final_answer);
    final_images.push_back(ImageJson(r.final_image));
    for (std::size_t k = 1; k <= max_images; ++k) {
      auto& col = columns[ReasoningImageColumn(static_cast<int>(k))];
      col.push_back(k <= r.reasoning_images.size()
                        ? ImageJson(r.reasoning_images[k - 1])
                        : nlohmann::json(nullptr));
    }
  }
  return {{"format", kRecordFormat},
          {"version", kRecordFormatVersion},
          {"category", category},
          {"split", SplitName(split)},
          {"num_rows", records.size()},
          {"num_image_columns", max_images},
          {"columns", columns}};
}

std::vector<TraceRecord> RecordsFromColumns(const nlohmann::json& table) {
  try {
    if (table.value("format", std::string()) != kRecordFormat) {
      Throw(ErrorCode::kParse, "not a record table");
    }
    const std::size_t rows = table.at("num_rows").get<std::size_t>();
    const std::size_t image_columns =
        table.at("num_image_columns").get<std::size_t>();
    const std::string category = table.at("category").get<std::string>();
    const auto& columns = table.at("columns");
    const auto& ids = Column(columns, kModelIdColumn, rows);
    const auto& prompts = Column(columns, kPromptColumn, rows);
    const auto& traces = Column(columns, kTraceColumn, rows);
    const auto& finals = Column(columns, kFinalAssemblyColumn, rows);
    const auto& final_images = Column(columns, kFinalImageColumn, rows);
    std::vector<const nlohmann::json*> image_cols;
    for (std::size_t k = 1; k <= image_columns; ++k) {
      image_cols.push_back(
          &Column(columns, ReasoningImageColumn(static_cast<int>(k)), rows));
    }
    std::vector<TraceRecord> records(rows);
    for (std::size_t i = 0; i < rows; ++i) {
      TraceRecord& r = records[i];
      r.model_id = ids[i].get<std::string>();
      r.category = category;
      r.prompt = prompts[i].get<std::string>();
      r.reasoning_trace = traces[i].get<std::string>();
      r.final_answer = finals[i].get<std::string>();
      r.final_image = ImageFromJson(final_images[i]);
      for (const nlohmann::json* col : image_cols) {
        const auto& cell = (*col)[i];
        if (cell.is_null()) break;
        r.reasoning_images.push_back(ImageFromJson(cell));
      }
    }
    return records;
  } catch (const nlohmann::json::exception& e) {
    Throw(ErrorCode::kParse, std::string("record table: ") + e.what());
  }
}

void WritePartition(const std::filesystem::path& root,
                    const std::string& category, DataSplit split,
                    const std::vector<TraceRecord>& records) {
  const auto path = PartitionPath(root, category, split);
  try {
    WriteFileAtomic(path, RecordsToColumns(records, category, split).dump());
  } catch (const Error& e) {
    Throw(e.code(), "writing " + path.string() + ": " + e.what());
  }
}

PartitionRead ReadPartition(const std::filesystem::path& root,
                            const std::string& category, DataSplit split) {
  PartitionRead out;
  const auto path = PartitionPath(root, category, split);
  if (!std::filesystem::exists(path.parent_path())) {
    out.warnings.push_back("missing split directory " +
                           path.parent_path().string());
    return out;
  }
  if (!std::filesystem::exists(path)) {
    out.warnings.push_back("missing partition file " + path.string());
    return out;
  }
  try {
    out.records = RecordsFromColumns(ReadJsonFile(path));
  } catch (const Error& e) {
    Throw(e.code(), path.string() + ": " + e.what());
  }
  return out;
}

std::vector<std::filesystem::path> WriteDataset(const std::filesystem::path& root,
                                                const DatasetSplit& split) {
  std::set<std::string> categories;
  for (DataSplit s : kAllSplits) {
    for (const TraceRecord& r : split.Of(s)) categories.insert(r.category);
  }
  std::vector<std::filesystem::path> written;
  for (const std::string& category : categories) {
    for (DataSplit s : kAllSplits) {
      std::vector<TraceRecord> rows;
      for (const TraceRecord& r : split.Of(s)) {
        if (r.category == category) rows.push_back(r);
      }
      WritePartition(root, category, s, rows);
      written.push_back(PartitionPath(root, category, s));
    }
  }
  return written;
}

DatasetRead ReadDataset(const std::filesystem::path& root) {
  DatasetRead out;
  if (!std::filesystem::is_directory(root)) {
    Throw(ErrorCode::kNotFound, "dataset root " + root.string() + " not found");
  }
  std::vector<std::filesystem::path> dirs;
  for (const auto& entry : std::filesystem::directory_iterator(root)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  for (const auto& dir : dirs) {
    const std::string category = dir.filename().string();
    DatasetSplit& split = out.by_category[category];
    for (DataSplit s : kAllSplits) {
      PartitionRead part = ReadPartition(root, category, s);
      split.Of(s) = std::move(part.records);
      for (auto& w : part.warnings) out.warnings.push_back(std::move(w));
    }
  }
  return out;
}

}  // namespace stepwise
