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

#ifndef STEPWISE_ASSET_ASSET_H_
#define STEPWISE_ASSET_ASSET_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "stepwise/common/validation.h"

namespace stepwise {

// The 24 object categories of the curated asset corpus.
const std::vector<std::string>& KnownCategories();
bool IsKnownCategory(std::string_view category);

struct AssetMeta {
  std::string model_id;
  std::string model_cat;
  std::string anno_id;
  std::filesystem::path root_path;
  bool known_category = true;

  bool operator==(const AssetMeta&) const = default;
};

nlohmann::json ToJson(const AssetMeta& meta);
AssetMeta AssetMetaFromJson(const nlohmann::json& j);

struct PartNode {
  std::string name;
  std::string description;
  int node_id = 0;
  std::vector<PartNode> children;
  std::vector<std::filesystem::path> mesh_refs;

  bool is_leaf() const { return children.empty(); }
  bool operator==(const PartNode&) const = default;
};

struct PartHierarchy {
  AssetMeta meta;
  PartNode root;
  // Leaf nodes of `root` in depth-first (pre-order, child order) sequence.
  std::vector<PartNode> leaves;

  const PartNode* FindLeaf(int node_id) const;
};

// Collects leaves of `root` in depth-first order.
std::vector<PartNode> CollectLeaves(const PartNode& root);

struct ScanResult {
  std::vector<AssetMeta> assets;
  // Per-sample problems (malformed or missing meta.json, unknown category,
  // duplicates dropped). Never fatal.
  ValidationReport issues;
};

// Scans the sample folders directly under `root_dir` (or `root_dir` itself
// when it holds a meta.json). Keeps one entry per model_id, the one with the
// lexicographically smallest anno_id, sorted by (model_cat, model_id).
// Throws Error(kIo) when root_dir cannot be listed.
ScanResult ScanAndDedup(const std::filesystem::path& root_dir);

// Reads <root_path>/result.json. Mesh references resolve to
// <root_path>/objs/<name>.obj. Throws NotFound or ParseError (with the JSON
// path of the offending node).
PartHierarchy ParseHierarchy(const AssetMeta& meta);
PartHierarchy ParseHierarchyJson(const AssetMeta& meta,
                                 const nlohmann::json& result);

// Codes: MISSING_MESH, MESH_PARSE_ERROR, DEGENERATE_GEOMETRY,
// EMPTY_HIERARCHY (errors); EMPTY_NAME, NAME_TOO_LONG, UNKNOWN_CATEGORY
// (warnings).
ValidationReport ValidateAsset(const PartHierarchy& hierarchy);

inline constexpr double kDegenerateAreaEpsilon = 1e-9;
inline constexpr std::size_t kMaxPartNameLength = 64;

nlohmann::json ToJson(const PartNode& node);
nlohmann::json ToJson(const PartHierarchy& hierarchy);

}  // namespace stepwise

#endif  // STEPWISE_ASSET_ASSET_H_
