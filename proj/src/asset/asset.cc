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

#include "stepwise/asset/asset.h"

#include <algorithm>
#include <map>
#include <set>

#include "stepwise/common/error.h"
#include "stepwise/common/file_io.h"
#include "stepwise/common/text.h"
#include "stepwise/render/mesh.h"

namespace stepwise {
namespace {

constexpr int kMaxDepth = 256;

std::string RequireString(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) Throw(ErrorCode::kParse, std::string("missing ") + key);
  const auto& value = j.at(key);
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  Throw(ErrorCode::kParse, std::string(key) + " is not a string");
}

struct ParseContext {
  const AssetMeta& meta;
  std::set<int> seen_ids;
};

PartNode ParseNode(const nlohmann::json& j, const std::string& path,
                   int depth, ParseContext& ctx) {
  if (depth > kMaxDepth) {
    Throw(ErrorCode::kParse, path + ": hierarchy deeper than " +
                                 std::to_string(kMaxDepth) +
                                 " (cyclic or malformed tree)");
  }
  if (!j.is_object()) Throw(ErrorCode::kParse, path + ": node is not an object");
  PartNode node;
  if (!j.contains("id") || !j.at("id").is_number_integer()) {
    Throw(ErrorCode::kParse, path + ": node lacks an integer id");
  }
  node.node_id = j.at("id").get<int>();
  if (!ctx.seen_ids.insert(node.node_id).second) {
    Throw(ErrorCode::kParse, path + ": node id " +
                                 std::to_string(node.node_id) +
                                 " appears twice (cyclic or malformed tree)");
  }
  node.name = j.value("name", std::string());
  node.description = j.contains("text") ? j.value("text", std::string())
                                        : j.value("description", std::string());
  const bool has_children =
      j.contains("children") && j.at("children").is_array() &&
      !j.at("children").empty();
  const bool has_objs = j.contains("objs") && j.at("objs").is_array() &&
                        !j.at("objs").empty();
  if (has_children && has_objs) {
    Throw(ErrorCode::kParse,
          path + ": node " + std::to_string(node.node_id) +
              " has both children and mesh references");
  }
  if (!has_children && !has_objs) {
    Throw(ErrorCode::kParse, path + ": leaf node " +
                                 std::to_string(node.node_id) +
                                 " has no mesh references");
  }
  if (has_children) {
    const auto& children = j.at("children");
    for (std::size_t i = 0; i < children.size(); ++i) {
      node.children.push_back(ParseNode(
          children[i], path + ".children[" + std::to_string(i) + "]",
          depth + 1, ctx));
    }
  } else {
    for (const auto& obj : j.at("objs")) {
      if (!obj.is_string()) {
        Throw(ErrorCode::kParse, path + ": objs entries must be strings");
      }
      std::string name = obj.get<std::string>();
      if (!name.ends_with(".obj")) name += ".obj";
      node.mesh_refs.push_back(ctx.meta.root_path / "objs" / name);
    }
  }
  return node;
}

void CollectLeavesInto(const PartNode& node, std::vector<PartNode>& out) {
  if (node.is_leaf()) {
    out.push_back(node);
    return;
  }
  for (const PartNode& child : node.children) CollectLeavesInto(child, out);
}

void CheckNames(const PartNode& node, ValidationReport& report) {
  if (Trim(node.name).empty()) {
    report.AddWarning("EMPTY_NAME",
                      "node " + std::to_string(node.node_id) + " has no name",
                      node.node_id);
  } else if (node.name.size() > kMaxPartNameLength) {
    report.AddWarning("NAME_TOO_LONG",
                      "node " + std::to_string(node.node_id) + " name exceeds " +
                          std::to_string(kMaxPartNameLength) + " characters",
                      node.node_id);
  }
  for (const PartNode& child : node.children) CheckNames(child, report);
}

}  // namespace

const std::vector<std::string>& KnownCategories() {
  static const std::vector<std::string> kCategories = {
      "Table",    "Chair",    "StorageFurniture", "Door",      "Bed",
      "Lamp",     "Vase",     "Hat",              "Bag",       "Scissors",
      "Display",  "Clock",    "Laptop",           "Earphone",  "Keyboard",
      "Faucet",   "TrashCan", "Refrigerator",     "Microwave", "Dishwasher",
      "Bottle",   "Knife",    "Mug",              "Bowl",
  };
  return kCategories;
}

bool IsKnownCategory(std::string_view category) {
  const auto& known = KnownCategories();
  return std::find(known.begin(), known.end(), category) != known.end();
}

nlohmann::json ToJson(const AssetMeta& meta) {
  return {{"model_id", meta.model_id},
          {"model_cat", meta.model_cat},
          {"anno_id", meta.anno_id},
          {"root_path", meta.root_path.generic_string()},
          {"known_category", meta.known_category}};
}

AssetMeta AssetMetaFromJson(const nlohmann::json& j) {
  AssetMeta meta;
  meta.model_id = RequireString(j, "model_id");
  meta.model_cat = RequireString(j, "model_cat");
  meta.anno_id = j.contains("anno_id") ? RequireString(j, "anno_id") : "";
  meta.root_path = j.value("root_path", std::string());
  meta.known_category = IsKnownCategory(meta.model_cat);
  return meta;
}

const PartNode* PartHierarchy::FindLeaf(int node_id) const {
  for (const PartNode& leaf : leaves) {
    if (leaf.node_id == node_id) return &leaf;
  }
  return nullptr;
}

std::vector<PartNode> CollectLeaves(const PartNode& root) {
  std::vector<PartNode> out;
  CollectLeavesInto(root, out);
  return out;
}

ScanResult ScanAndDedup(const std::filesystem::path& root_dir) {
  ScanResult result;
  std::error_code ec;
  if (!fs::is_directory(root_dir, ec)) {
    Throw(ErrorCode::kIo, "cannot read directory " + root_dir.string());
  }
  std::vector<fs::path> samples;
  if (fs::exists(root_dir / "meta.json")) {
    samples.push_back(root_dir);
  } else {
    fs::directory_iterator it(root_dir, ec);
    if (ec) {
      Throw(ErrorCode::kIo,
            "cannot list " + root_dir.string() + ": " + ec.message());
    }
    for (const auto& entry : it) {
      if (entry.is_directory()) samples.push_back(entry.path());
    }
  }
  std::sort(samples.begin(), samples.end());

  std::map<std::string, AssetMeta> by_model;
  for (const fs::path& sample : samples) {
    const fs::path meta_path = sample / "meta.json";
    AssetMeta meta;
    try {
      meta = AssetMetaFromJson(ReadJsonFile(meta_path));
    } catch (const Error& e) {
      result.issues.AddWarning("META_PARSE",
                               sample.filename().string() + ": " + e.what());
      continue;
    } catch (const nlohmann::json::exception& e) {
      result.issues.AddWarning("META_PARSE",
                               sample.filename().string() + ": " + e.what());
      continue;
    }
    if (meta.model_id.empty()) {
      result.issues.AddWarning("META_PARSE",
                               sample.filename().string() + ": empty model_id");
      continue;
    }
    meta.root_path = sample;
    auto [it, inserted] = by_model.emplace(meta.model_id, meta);
    if (!inserted) {
      const AssetMeta& kept =
          meta.anno_id < it->second.anno_id ? meta : it->second;
      const AssetMeta& dropped =
          meta.anno_id < it->second.anno_id ? it->second : meta;
      result.issues.AddWarning(
          "DUPLICATE_MODEL", "model " + meta.model_id + ": keeping anno_id '" +
                                 kept.anno_id + "', dropping '" +
                                 dropped.anno_id + "'");
      it->second = kept;
    }
  }
  for (auto& [id, meta] : by_model) {
    if (!meta.known_category) {
      result.issues.AddWarning("UNKNOWN_CATEGORY", "model " + id +
                                                       " has category '" +
                                                       meta.model_cat + "'");
    }
    result.assets.push_back(std::move(meta));
  }
  std::sort(result.assets.begin(), result.assets.end(),
            [](const AssetMeta& a, const AssetMeta& b) {
              return std::tie(a.model_cat, a.model_id) <
                     std::tie(b.model_cat, b.model_id);
            });
  return result;
}

PartHierarchy ParseHierarchyJson(const AssetMeta& meta,
                                 const nlohmann::json& result) {
  const nlohmann::json* root = &result;
  std::string path = "$";
  if (result.is_array()) {
    if (result.size() != 1) {
      Throw(ErrorCode::kParse, "$: expected exactly one root node, found " +
                                   std::to_string(result.size()));
    }
    root = &result[0];
    path = "$[0]";
  }
  ParseContext ctx{meta, {}};
  PartHierarchy hierarchy;
  hierarchy.meta = meta;
  hierarchy.root = ParseNode(*root, path, 0, ctx);
  hierarchy.leaves = CollectLeaves(hierarchy.root);
  return hierarchy;
}

PartHierarchy ParseHierarchy(const AssetMeta& meta) {
  const fs::path path = meta.root_path / "result.json";
  try {
    return ParseHierarchyJson(meta, ReadJsonFile(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) {
      Throw(ErrorCode::kParse, path.string() + ": " + e.what());
    }
    throw;
  }
}

ValidationReport ValidateAsset(const PartHierarchy& hierarchy) {
  ValidationReport report;
  if (!hierarchy.meta.known_category) {
    report.AddWarning("UNKNOWN_CATEGORY",
                      "category '" + hierarchy.meta.model_cat +
                          "' is not in the configured list");
  }
  if (hierarchy.leaves.empty()) {
    report.AddError("EMPTY_HIERARCHY", "hierarchy has no leaf parts");
    return report;
  }
  CheckNames(hierarchy.root, report);
  for (const PartNode& leaf : hierarchy.leaves) {
    std::size_t triangles = 0;
    double area = 0.0;
    bool loaded_all = true;
    for (const fs::path& ref : leaf.mesh_refs) {
      std::error_code ec;
      if (!fs::exists(ref, ec)) {
        report.AddError("MISSING_MESH", "missing mesh " + ref.string(),
                        leaf.node_id);
        loaded_all = false;
        continue;
      }
      try {
        const TriangleMesh mesh = LoadMesh(ref);
        triangles += mesh.triangles.size();
        area += mesh.SurfaceArea();
      } catch (const Error& e) {
        report.AddError("MESH_PARSE_ERROR", e.what(), leaf.node_id);
        loaded_all = false;
      }
    }
    if (loaded_all && (triangles == 0 || area < kDegenerateAreaEpsilon)) {
      report.AddError("DEGENERATE_GEOMETRY",
                      "leaf " + std::to_string(leaf.node_id) + " ('" +
                          leaf.name + "') has no surface area",
                      leaf.node_id);
    }
  }
  return report;
}

nlohmann::json ToJson(const PartNode& node) {
  nlohmann::json out = {{"id", node.node_id},
                        {"name", node.name},
                        {"text", node.description}};
  if (node.is_leaf()) {
    out["objs"] = nlohmann::json::array();
    for (const auto& ref : node.mesh_refs) {
      out["objs"].push_back(ref.stem().string());
    }
  } else {
    out["children"] = nlohmann::json::array();
    for (const PartNode& child : node.children) {
      out["children"].push_back(ToJson(child));
    }
  }
  return out;
}

nlohmann::json ToJson(const PartHierarchy& hierarchy) {
  nlohmann::json leaves = nlohmann::json::array();
  for (const PartNode& leaf : hierarchy.leaves) {
    nlohmann::json refs = nlohmann::json::array();
    for (const auto& ref : leaf.mesh_refs) refs.push_back(ref.generic_string());
    leaves.push_back({{"id", leaf.node_id},
                      {"name", leaf.name},
                      {"text", leaf.description},
                      {"mesh_refs", refs}});
  }
  return {{"meta", ToJson(hierarchy.meta)},
          {"root", ToJson(hierarchy.root)},
          {"leaves", leaves}};
}

}  // namespace stepwise
