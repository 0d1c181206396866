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

#ifndef STEPWISE_STATS_STAT_VALUE_H_
#define STEPWISE_STATS_STAT_VALUE_H_

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace stepwise {

// A statistic that may be undefined for its input. Undefined values carry a
// short reason code and are never reported as 0.
struct StatValue {
  std::optional<double> value;
  std::string reason;

  static StatValue Of(double v) { return {v, ""}; }
  static StatValue Undefined(std::string why) {
    return {std::nullopt, std::move(why)};
  }
  bool defined() const { return value.has_value(); }
  double operator*() const { return *value; }
};

inline nlohmann::json ToJson(const StatValue& s) {
  if (s.value) return *s.value;
  return nlohmann::json{{"undefined", s.reason}};
}

}  // namespace stepwise

#endif  // STEPWISE_STATS_STAT_VALUE_H_
