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

#ifndef STEPWISE_METRICS_INSTRUCTION_H_
#define STEPWISE_METRICS_INSTRUCTION_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace stepwise {

struct CategoryRequirement {
  std::string name;
  int required = 1;

  bool operator==(const CategoryRequirement&) const = default;
};

struct AttributeItem {
  std::string target;  // a category name
  std::string attribute;

  bool operator==(const AttributeItem&) const = default;
};

struct ConnectivityPair {
  std::string a;
  std::string b;

  bool operator==(const ConnectivityPair&) const = default;
};

struct RelationTriplet {
  std::string subject;
  std::string predicate;
  std::string object;

  bool operator==(const RelationTriplet&) const = default;
};

struct InstructionSpec {
  std::vector<CategoryRequirement> categories;
  std::vector<AttributeItem> attributes;
  std::vector<ConnectivityPair> connectivity;
  std::vector<RelationTriplet> relations;
  std::string shape_question;
  // Fragments the parser skipped.
  std::vector<std::string> warnings;

  // Required count of a category, or 0 when absent.
  int RequiredCount(const std::string& name) const;
  // Throws StructureError on empty names, counts < 1, or attributes whose
  // target is not a category.
  void Validate() const;

  bool operator==(const InstructionSpec&) const = default;
};

std::string ShapeQuestion(std::string_view goal);

// Rule-based stand-in parser. Clauses are split on punctuation and on
// "and", "with", "featuring", "having", "including". In each noun phrase a
// leading quantifier sets the count, the last word is the category and the
// remaining modifiers form one attribute. Connectivity phrases ("attached
// to", "connected to", "connecting", "mounted on", "on") and spatial
// relations ("above", "below", "on top of", "left of", "inside", ...) link
// the phrase before them to the phrase after.
InstructionSpec ParseInstruction(std::string_view goal);

// JSON spec file:
//   {"categories": [{"name": "legs", "count": 4}],
//    "attributes": [{"target": "seat", "attribute": "square"}],
//    "connectivity": [["seat", "legs"]],
//    "relations": [["back", "above", "seat"]],
//    "shape_question": "..."}
nlohmann::json ToJson(const InstructionSpec& spec);
InstructionSpec InstructionSpecFromJson(const nlohmann::json& j);
InstructionSpec LoadInstructionSpec(const std::filesystem::path& path);

}  // namespace stepwise

#endif  // STEPWISE_METRICS_INSTRUCTION_H_
