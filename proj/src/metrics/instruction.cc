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

#include "stepwise/metrics/instruction.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

#include "stepwise/common/error.h"
#include "stepwise/common/file_io.h"
#include "stepwise/common/text.h"

namespace stepwise {
namespace {

using Words = std::vector<std::string>;

enum class LinkKind { kConnectivity, kRelation };

struct LinkPhrase {
  Words words;
  LinkKind kind;
  std::string predicate;
};

const std::vector<LinkPhrase>& LinkPhrases() {
  // Longest phrases first so "on top of" wins over "on".
  static const std::vector<LinkPhrase> kPhrases = [] {
    std::vector<LinkPhrase> p = {
        {{"to", "the", "left", "of"}, LinkKind::kRelation, "left of"},
        {{"to", "the", "right", "of"}, LinkKind::kRelation, "right of"},
        {{"on", "top", "of"}, LinkKind::kRelation, "on top of"},
        {{"in", "front", "of"}, LinkKind::kRelation, "in front of"},
        {{"left", "of"}, LinkKind::kRelation, "left of"},
        {{"right", "of"}, LinkKind::kRelation, "right of"},
        {{"attached", "to"}, LinkKind::kConnectivity, "attached to"},
        {{"connected", "to"}, LinkKind::kConnectivity, "connected to"},
        {{"joined", "to"}, LinkKind::kConnectivity, "joined to"},
        {{"fixed", "to"}, LinkKind::kConnectivity, "fixed to"},
        {{"fastened", "to"}, LinkKind::kConnectivity, "fastened to"},
        {{"affixed", "to"}, LinkKind::kConnectivity, "affixed to"},
        {{"mounted", "on"}, LinkKind::kConnectivity, "mounted on"},
        {{"mounted", "to"}, LinkKind::kConnectivity, "mounted to"},
        {{"above"}, LinkKind::kRelation, "above"},
        {{"below"}, LinkKind::kRelation, "below"},
        {{"underneath"}, LinkKind::kRelation, "underneath"},
        {{"beneath"}, LinkKind::kRelation, "beneath"},
        {{"under"}, LinkKind::kRelation, "under"},
        {{"inside"}, LinkKind::kRelation, "inside"},
        {{"behind"}, LinkKind::kRelation, "behind"},
        {{"connecting"}, LinkKind::kConnectivity, "connecting"},
        {{"linking"}, LinkKind::kConnectivity, "linking"},
        {{"on"}, LinkKind::kConnectivity, "on"},
    };
    std::stable_sort(p.begin(), p.end(), [](const auto& a, const auto& b) {
      return a.words.size() > b.words.size();
    });
    return p;
  }();
  return kPhrases;
}

bool IsClauseBreak(const std::string& w) {
  static const Words kBreaks = {",", ".",      ";",         ":",      "!",
                                "?", "and",    "with",      "featuring",
                                "having", "including", "plus", "while"};
  return std::find(kBreaks.begin(), kBreaks.end(), w) != kBreaks.end();
}

bool IsImperative(const std::string& w) {
  static const Words kVerbs = {"build", "create", "construct", "make",
                               "generate", "design", "model", "render",
                               "produce", "assemble", "draw", "craft"};
  return std::find(kVerbs.begin(), kVerbs.end(), w) != kVerbs.end();
}

bool IsDeterminer(const std::string& w) {
  static const Words kDet = {"the", "its", "their", "this", "that", "these",
                             "those", "each", "every", "some", "his", "her"};
  return std::find(kDet.begin(), kDet.end(), w) != kDet.end();
}

// Participles and placement words that trail a noun phrase before a link.
bool IsFiller(const std::string& w) {
  static const Words kFiller = {
      "positioned", "placed",   "located", "set",      "sitting", "resting",
      "centered",   "situated", "extending", "standing", "is",     "are",
      "which",      "that",     "it",      "them",     "both",    "all",
      "very",       "also",     "firmly",  "securely"};
  if (std::find(kFiller.begin(), kFiller.end(), w) != kFiller.end()) return true;
  return w.size() > 4 && w.compare(w.size() - 2, 2, "ly") == 0;
}

std::optional<int> NumberWord(const std::string& w) {
  static const std::map<std::string, int> kNumbers = {
      {"a", 1},       {"an", 1},      {"one", 1},      {"single", 1},
      {"two", 2},     {"double", 2},  {"twin", 2},     {"three", 3},
      {"triple", 3},  {"four", 4},    {"five", 5},     {"six", 6},
      {"seven", 7},   {"eight", 8},   {"nine", 9},     {"ten", 10},
      {"eleven", 11}, {"twelve", 12}, {"thirteen", 13}, {"fourteen", 14},
      {"fifteen", 15}, {"sixteen", 16}, {"seventeen", 17}, {"eighteen", 18},
      {"nineteen", 19}, {"twenty", 20}};
  const auto it = kNumbers.find(w);
  if (it != kNumbers.end()) return it->second;
  if (!w.empty() && std::all_of(w.begin(), w.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      }) && w.size() < 7) {
    return std::stoi(w);
  }
  return std::nullopt;
}

Words Tokenize(std::string_view text) {
  Words out;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) out.push_back(ToLower(current));
    current.clear();
  };
  for (char c : text) {
    const unsigned char u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || c == '-' || c == '\'' || (u & 0x80)) {
      current += c;
    } else if (c == ',' || c == '.' || c == ';' || c == ':' || c == '!' ||
               c == '?') {
      flush();
      out.emplace_back(1, c);
    } else {
      flush();
    }
  }
  flush();
  return out;
}

struct NounPhrase {
  std::string head;
  std::optional<int> count;
  std::string modifiers;
};

std::optional<NounPhrase> ParseNounPhrase(Words words) {
  // "the end of the slim handle" -> "the slim handle"; "pair of" is a count.
  std::optional<int> count;
  for (std::size_t i = words.size(); i-- > 0;) {
    if (words[i] != "of") continue;
    if (i >= 1 && (words[i - 1] == "pair" || words[i - 1] == "couple")) {
      words.erase(words.begin() + static_cast<long>(i) - 1,
                  words.begin() + static_cast<long>(i) + 1);
      count = 2;
      // Drop an article before "pair".
      if (i >= 2 && (words[i - 2] == "a" || words[i - 2] == "one")) {
        words.erase(words.begin() + static_cast<long>(i) - 2);
      }
    } else {
      words.erase(words.begin(), words.begin() + static_cast<long>(i) + 1);
    }
    break;
  }
  Words kept;
  for (const std::string& w : words) {
    if (IsDeterminer(w) || IsFiller(w)) continue;
    kept.push_back(w);
  }
  while (!kept.empty()) {
    const auto n = NumberWord(kept.front());
    if (!n) break;
    if (!count) count = n;
    kept.erase(kept.begin());
  }
  if (kept.empty()) return std::nullopt;
  NounPhrase np;
  np.head = kept.back();
  if (NumberWord(np.head)) return std::nullopt;
  kept.pop_back();
  np.count = count;
  np.modifiers = Join(kept, " ");
  return np;
}

class SpecBuilder {
 public:
  explicit SpecBuilder(InstructionSpec& spec) : spec_(spec) {}

  std::string Register(const NounPhrase& np) {
    auto it = std::find_if(
        spec_.categories.begin(), spec_.categories.end(),
        [&](const CategoryRequirement& c) { return c.name == np.head; });
    if (it == spec_.categories.end()) {
      spec_.categories.push_back({np.head, np.count.value_or(1)});
      explicit_[np.head] = np.count.has_value();
    } else if (np.count && !explicit_[np.head]) {
      it->required = *np.count;
      explicit_[np.head] = true;
    }
    if (!np.modifiers.empty()) {
      const AttributeItem item{np.head, np.modifiers};
      if (std::find(spec_.attributes.begin(), spec_.attributes.end(), item) ==
          spec_.attributes.end()) {
        spec_.attributes.push_back(item);
      }
    }
    last_ = np.head;
    return np.head;
  }

  const std::string& last() const { return last_; }

 private:
  InstructionSpec& spec_;
  std::map<std::string, bool> explicit_;
  std::string last_;
};

// Position and phrase of the first link in words[from..].
std::optional<std::pair<std::size_t, const LinkPhrase*>> FindLink(
    const Words& words, std::size_t from) {
  for (std::size_t i = from; i < words.size(); ++i) {
    for (const LinkPhrase& p : LinkPhrases()) {
      if (i + p.words.size() > words.size()) continue;
      if (std::equal(p.words.begin(), p.words.end(), words.begin() + i)) {
        return std::make_pair(i, &p);
      }
    }
  }
  return std::nullopt;
}

void ParseClause(const Words& clause, SpecBuilder& builder,
                 InstructionSpec& spec) {
  if (clause.empty()) return;
  std::string subject;
  // A null phrase means no further link in the clause.
  std::size_t link_pos = clause.size();
  const LinkPhrase* link_phrase = nullptr;
  auto next_link = [&](std::size_t from) {
    const auto found = FindLink(clause, from);
    link_pos = found ? found->first : clause.size();
    link_phrase = found ? found->second : nullptr;
  };
  next_link(0);
  {
    const auto np = ParseNounPhrase(Words(clause.begin(), clause.begin() + link_pos));
    if (np) {
      subject = builder.Register(*np);
    } else if (link_phrase) {
      subject = builder.last();
    } else {
      spec.warnings.push_back("no noun phrase in '" + Join(clause, " ") + "'");
      return;
    }
  }
  while (link_phrase) {
    const LinkPhrase& phrase = *link_phrase;
    const std::size_t start = link_pos + phrase.words.size();
    next_link(start);
    const auto np =
        ParseNounPhrase(Words(clause.begin() + start, clause.begin() + link_pos));
    if (!np || subject.empty()) {
      spec.warnings.push_back("incomplete '" + phrase.predicate + "' phrase in '" +
                              Join(clause, " ") + "'");
    } else {
      const std::string object = builder.Register(*np);
      if (phrase.kind == LinkKind::kConnectivity) {
        spec.connectivity.push_back({subject, object});
      } else {
        spec.relations.push_back({subject, phrase.predicate, object});
      }
      subject = object;
    }
  }
}

}  // namespace

int InstructionSpec::RequiredCount(const std::string& name) const {
  for (const auto& c : categories) {
    if (c.name == name) return c.required;
  }
  return 0;
}

void InstructionSpec::Validate() const {
  for (const auto& c : categories) {
    if (Trim(c.name).empty()) Throw(ErrorCode::kStructure, "empty category");
    if (c.required < 1) {
      Throw(ErrorCode::kStructure, "category '" + c.name + "' needs count >= 1");
    }
  }
  for (const auto& a : attributes) {
    if (Trim(a.attribute).empty()) Throw(ErrorCode::kStructure, "empty attribute");
    if (RequiredCount(a.target) == 0) {
      Throw(ErrorCode::kStructure,
            "attribute target '" + a.target + "' is not a category");
    }
  }
  for (const auto& e : connectivity) {
    if (Trim(e.a).empty() || Trim(e.b).empty()) {
      Throw(ErrorCode::kStructure, "empty connectivity part");
    }
  }
  for (const auto& r : relations) {
    if (Trim(r.subject).empty() || Trim(r.predicate).empty() ||
        Trim(r.object).empty()) {
      Throw(ErrorCode::kStructure, "empty relation field");
    }
  }
}

std::string ShapeQuestion(std::string_view goal) {
  return "Does the object match: " + Trim(goal) + "?";
}

InstructionSpec ParseInstruction(std::string_view goal) {
  InstructionSpec spec;
  spec.shape_question = ShapeQuestion(goal);
  Words tokens = Tokenize(goal);
  if (!tokens.empty() && IsImperative(tokens.front())) {
    tokens.erase(tokens.begin());
  }
  SpecBuilder builder(spec);
  Words clause;
  for (const std::string& t : tokens) {
    if (IsClauseBreak(t)) {
      ParseClause(clause, builder, spec);
      clause.clear();
    } else {
      clause.push_back(t);
    }
  }
  ParseClause(clause, builder, spec);
  return spec;
}

nlohmann::json ToJson(const InstructionSpec& spec) {
  nlohmann::json categories = nlohmann::json::array();
  for (const auto& c : spec.categories) {
    categories.push_back({{"name", c.name}, {"count", c.required}});
  }
  nlohmann::json attributes = nlohmann::json::array();
  for (const auto& a : spec.attributes) {
    attributes.push_back({{"target", a.target}, {"attribute", a.attribute}});
  }
  nlohmann::json connectivity = nlohmann::json::array();
  for (const auto& e : spec.connectivity) connectivity.push_back({e.a, e.b});
  nlohmann::json relations = nlohmann::json::array();
  for (const auto& r : spec.relations) {
    relations.push_back({r.subject, r.predicate, r.object});
  }
  return {{"categories", categories},       {"attributes", attributes},
          {"connectivity", connectivity},   {"relations", relations},
          {"shape_question", spec.shape_question}, {"warnings", spec.warnings}};
}

InstructionSpec InstructionSpecFromJson(const nlohmann::json& j) {
  try {
    InstructionSpec spec;
    for (const auto& c : j.value("categories", nlohmann::json::array())) {
      spec.categories.push_back(
          {c.at("name").get<std::string>(), c.value("count", 1)});
    }
    for (const auto& a : j.value("attributes", nlohmann::json::array())) {
      spec.attributes.push_back({a.at("target").get<std::string>(),
                                 a.at("attribute").get<std::string>()});
    }
    for (const auto& e : j.value("connectivity", nlohmann::json::array())) {
      spec.connectivity.push_back(
          {e.at(0).get<std::string>(), e.at(1).get<std::string>()});
    }
    for (const auto& r : j.value("relations", nlohmann::json::array())) {
      spec.relations.push_back({r.at(0).get<std::string>(),
                                r.at(1).get<std::string>(),
                                r.at(2).get<std::string>()});
    }
    spec.shape_question = j.value("shape_question", std::string());
    spec.warnings =
        j.value("warnings", std::vector<std::string>());
    spec.Validate();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    Throw(ErrorCode::kParse, std::string("instruction spec: ") + e.what());
  }
}

InstructionSpec LoadInstructionSpec(const std::filesystem::path& path) {
  try {
    return InstructionSpecFromJson(ReadJsonFile(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse || e.code() == ErrorCode::kStructure) {
      Throw(e.code(), path.string() + ": " + e.what());
    }
    throw;
  }
}

}  // namespace stepwise
