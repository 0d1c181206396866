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

#ifndef STEPWISE_COMMON_TEXT_H_
#define STEPWISE_COMMON_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace stepwise {

std::string ToLower(std::string_view s);
std::string Trim(std::string_view s);
bool StartsWith(std::string_view s, std::string_view prefix);

// Splits on runs of whitespace; no empty tokens.
std::vector<std::string> SplitWhitespace(std::string_view s);
std::vector<std::string> Split(std::string_view s, char delim);
std::string Join(const std::vector<std::string>& parts, std::string_view sep);

// Replaces every occurrence of `from` with `to`.
std::string ReplaceAll(std::string s, std::string_view from,
                       std::string_view to);

// Part-name normalization shared by symmetric grouping and mention matching:
// lowercase, '_' and '-' become spaces, digits dropped, whitespace collapsed,
// and a trailing plural "s" stripped from each word ("legs" -> "leg",
// "leg_2" -> "leg"). Words ending in "ss" keep their final letter.
std::string NormalizeName(std::string_view name);

// Words of NormalizeName(name).
std::vector<std::string> NormalizedWords(std::string_view name);

}  // namespace stepwise

#endif  // STEPWISE_COMMON_TEXT_H_
