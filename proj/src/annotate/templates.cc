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

#include "stepwise/annotate/templates.h"

#include <algorithm>
#include <cctype>

#include "stepwise/common/error.h"
#include "stepwise/templates_data.h"

namespace stepwise {

std::vector<std::string> TemplateIds() {
  std::vector<std::string> ids;
  for (const auto& entry : templates_data::kEntries) {
    ids.emplace_back(entry.id);
  }
  return ids;
}

std::string_view TemplateText(std::string_view id) {
  for (const auto& entry : templates_data::kEntries) {
    if (entry.id == id) {
      std::string_view text = entry.text;
      if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
      return text;
    }
  }
  Throw(ErrorCode::kNotFound, "unknown template '" + std::string(id) + "'");
}

std::string FillTemplate(std::string_view text,
                         const std::map<std::string, std::string>& slots) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '{') {
      const std::size_t close = text.find('}', i + 1);
      if (close != std::string_view::npos) {
        const std::string name(text.substr(i + 1, close - i - 1));
        const auto it = slots.find(name);
        if (it != slots.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out += text[i++];
  }
  return out;
}

std::vector<std::string> TemplatePlaceholders(std::string_view text) {
  std::vector<std::string> names;
  std::size_t i = 0;
  while ((i = text.find('{', i)) != std::string_view::npos) {
    const std::size_t close = text.find('}', i + 1);
    if (close == std::string_view::npos) break;
    const std::string_view name = text.substr(i + 1, close - i - 1);
    const bool ident =
        !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
          return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
        });
    if (ident) names.emplace_back(name);
    i = close + 1;
  }
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

}  // namespace stepwise
