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

#ifndef STEPWISE_JUDGE_GATEWAY_H_
#define STEPWISE_JUDGE_GATEWAY_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stepwise/annotate/chat_client.h"
#include "stepwise/common/hash.h"
#include "stepwise/metrics/confidence.h"

namespace stepwise {

inline constexpr double kVoteTemperature = 0.2;
inline constexpr double kVoteTopP = 0.9;
inline constexpr int kDefaultVotes = 5;
inline constexpr int kJudgeTopLogprobs = 5;

struct JudgeQuery {
  std::string question_id;
  std::string template_id;
  std::map<std::string, std::string> slots;
  // Text appended to the filled template.
  std::string suffix;
  std::vector<Bytes> images;
  // options[0] is the positive label.
  std::vector<std::string> options = {"Yes", "No"};
  DecodeParams decode = {0.0, std::nullopt, std::nullopt, kJudgeTopLogprobs, 512};

  // Throws ConfigError unless there are 2 options and 1 or 2 images.
  void Validate() const;
  // System persona plus the filled template. `reminder` appends the format
  // reminder used for the single re-ask.
  ChatRequest ToRequest(const std::string& model, bool reminder) const;
};

// Option named after "Answer:" (or the whole reply), matched without case.
std::optional<std::string> ParseAnswerLabel(const std::string& text,
                                            const std::vector<std::string>& options);

// {"count": n} (optionally fenced) or a bare non-negative integer.
std::optional<int> ParseCount(const std::string& text);

// Logscores of (options[0], options[1]) at the last position where `answer`
// was generated. A label spread over several tokens has their logprobs
// summed; a note is added in that case. Nullopt when the other option is
// not among the alternatives.
std::optional<std::pair<double, double>> ExtractOptionLogscores(
    const std::vector<TokenLogprob>& logprobs,
    const std::vector<std::string>& options, const std::string& answer,
    std::vector<std::string>* notes);

struct VoteResult {
  int repetitions = 0;
  std::map<std::string, int> tallies;
  std::string positive;
  // tallies[positive] / repetitions.
  double confidence = 0.0;
  std::vector<std::string> transcript_refs;

  JudgeDecision ToDecision(const std::string& question_id,
                           const std::vector<std::string>& options) const;
};

// Thread-safe when the wrapped client is.
class JudgeGateway {
 public:
  explicit JudgeGateway(std::shared_ptr<ChatClient> client,
                        std::string model = "");

  // Asks once, re-asks once with a format reminder, then throws
  // JudgeFormatError. Confidence comes from the option logscores when
  // present, else 1.0 for the returned label.
  JudgeDecision ForcedChoice(const JudgeQuery& query);

  // One isolated request per category; same re-ask rule as ForcedChoice.
  int CountComponents(const std::string& category, const Bytes& image,
                      const std::string& question_id = "");

  // R sampled queries at temperature 0.2, top-p 0.9 and seeds 0..R-1.
  // Transport failures propagate as EndpointError.
  VoteResult SelfConsistency(const JudgeQuery& query,
                             int repetitions = kDefaultVotes);

  ChatClient& client() { return *client_; }

 private:
  std::shared_ptr<ChatClient> client_;
  std::string model_;
};

}  // namespace stepwise

#endif  // STEPWISE_JUDGE_GATEWAY_H_
