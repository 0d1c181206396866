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

#include "stepwise/judge/gateway.h"

#include <algorithm>
#include <cctype>

#include "stepwise/annotate/templates.h"
#include "stepwise/common/error.h"
#include "stepwise/common/text.h"

namespace stepwise {
namespace {

std::string CleanWord(std::string_view word) {
  std::string out;
  for (char c : word) {
    if (std::isalpha(static_cast<unsigned char>(c))) out += c;
  }
  return ToLower(out);
}

std::optional<std::string> MatchOption(std::string_view word,
                                       const std::vector<std::string>& options) {
  const std::string w = CleanWord(word);
  for (const std::string& option : options) {
    if (!w.empty() && w == ToLower(option)) return option;
  }
  return std::nullopt;
}

std::string LeftTrimmedLower(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return ToLower(s.substr(i));
}

}  // namespace

void JudgeQuery::Validate() const {
  if (options.size() != 2) {
    Throw(ErrorCode::kConfig, "forced choice needs exactly 2 options");
  }
  if (images.empty() || images.size() > 2) {
    Throw(ErrorCode::kConfig, "judge query needs 1 or 2 images");
  }
}

ChatRequest JudgeQuery::ToRequest(const std::string& model,
                                  bool reminder) const {
  ChatRequest request;
  request.template_id = template_id;
  request.model = model;
  request.decode = decode;
  request.messages.push_back(
      {"system", std::string(TemplateText(kJudgeSystemTemplate)), {}});
  std::string text = FillTemplate(TemplateText(template_id), slots) + suffix;
  if (reminder) {
    if (template_id == kJudgeCountTemplate) {
      text += "\n\nFormat reminder: reply with JSON only, exactly "
              "{\"count\": <integer>}.";
    } else {
      text += "\n\nFormat reminder: end your reply with the line \"Answer: " +
              options[0] + "\" or \"Answer: " + options[1] + "\".";
    }
  }
  request.messages.push_back({"user", text, images});
  return request;
}

std::optional<std::string> ParseAnswerLabel(
    const std::string& text, const std::vector<std::string>& options) {
  const std::string lower = ToLower(text);
  std::size_t at = lower.rfind("answer");
  while (at != std::string::npos) {
    std::size_t colon = lower.find(':', at);
    const std::size_t newline = lower.find('\n', at);
    if (colon != std::string::npos &&
        (newline == std::string::npos || colon < newline)) {
      // Markup such as "**" around the label is skipped.
      for (const auto& word :
           SplitWhitespace(std::string_view(text).substr(colon + 1))) {
        if (CleanWord(word).empty()) continue;
        if (auto match = MatchOption(word, options)) return match;
        break;
      }
    }
    if (at == 0) break;
    at = lower.rfind("answer", at - 1);
  }
  const auto words = SplitWhitespace(text);
  if (words.size() == 1) return MatchOption(words.front(), options);
  return std::nullopt;
}

std::optional<int> ParseCount(const std::string& text) {
  std::string body = Trim(text);
  if (StartsWith(body, "```")) {
    const std::size_t first_newline = body.find('\n');
    const std::size_t fence = body.rfind("```");
    if (first_newline != std::string::npos && fence > first_newline) {
      body = Trim(body.substr(first_newline + 1, fence - first_newline - 1));
    }
  }
  if (!body.empty() &&
      std::all_of(body.begin(), body.end(),
                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
      body.size() < 7) {
    return std::stoi(body);
  }
  try {
    const nlohmann::json j = nlohmann::json::parse(body);
    if (j.is_object() && j.contains("count") && j["count"].is_number_integer()) {
      const auto value = j["count"].get<long long>();
      if (value >= 0 && value < 1000000) return static_cast<int>(value);
    }
  } catch (const nlohmann::json::exception&) {
  }
  return std::nullopt;
}

std::optional<std::pair<double, double>> ExtractOptionLogscores(
    const std::vector<TokenLogprob>& logprobs,
    const std::vector<std::string>& options, const std::string& answer,
    std::vector<std::string>* notes) {
  const std::string target = ToLower(answer);
  const auto other_it = std::find_if(options.begin(), options.end(),
                                     [&](const std::string& o) { return o != answer; });
  if (other_it == options.end() || target.empty()) return std::nullopt;
  const std::string other = ToLower(*other_it);

  for (std::size_t i = logprobs.size(); i-- > 0;) {
    std::string built;
    double sum = 0.0;
    std::size_t j = i;
    for (; j < logprobs.size(); ++j) {
      const std::string piece = j == i ? LeftTrimmedLower(logprobs[j].token)
                                       : ToLower(logprobs[j].token);
      built += piece;
      sum += logprobs[j].logprob;
      if (built.size() >= target.size()) break;
    }
    if (built != target) continue;
    const std::size_t used = j - i + 1;
    if (used > 1 && notes) {
      notes->push_back("answer label spans " + std::to_string(used) +
                       " tokens; logprobs summed");
    }
    std::optional<double> other_score;
    for (const auto& [token, lp] : logprobs[i].top) {
      const std::string alt = LeftTrimmedLower(token);
      if (alt == other) {
        other_score = lp;
        break;
      }
      if (!alt.empty() && other.compare(0, alt.size(), alt) == 0 &&
          !other_score) {
        other_score = lp;
        if (notes) notes->push_back("alternative label scored by first token");
      }
    }
    if (!other_score) return std::nullopt;
    if (answer == options[0]) return std::make_pair(sum, *other_score);
    return std::make_pair(*other_score, sum);
  }
  return std::nullopt;
}

JudgeDecision VoteResult::ToDecision(
    const std::string& question_id,
    const std::vector<std::string>& options) const {
  JudgeDecision d;
  d.question_id = question_id;
  d.options = options;
  d.method = "vote";
  const bool positive_majority = 2 * tallies.at(positive) >= repetitions;
  d.answer = positive_majority ? options[0] : options[1];
  d.confidence = positive_majority ? confidence : 1.0 - confidence;
  if (!transcript_refs.empty()) d.transcript_ref = transcript_refs.front();
  return d;
}

JudgeGateway::JudgeGateway(std::shared_ptr<ChatClient> client,
                           std::string model)
    : client_(std::move(client)), model_(std::move(model)) {}

JudgeDecision JudgeGateway::ForcedChoice(const JudgeQuery& query) {
  query.Validate();
  for (int attempt = 0; attempt < 2; ++attempt) {
    const ChatRequest request = query.ToRequest(model_, attempt > 0);
    const ChatResponse response = client_->Complete(request);
    const auto label = ParseAnswerLabel(response.text, query.options);
    if (!label) continue;
    JudgeDecision d;
    d.question_id = query.question_id;
    d.answer = *label;
    d.options = query.options;
    d.transcript_ref = request.CacheKey();
    if (attempt > 0) d.notes.push_back("answered after format reminder");
    d.logscores =
        ExtractOptionLogscores(response.logprobs, query.options, *label, &d.notes);
    if (d.logscores) {
      const double positive = Confidence(d.logscores->first, d.logscores->second);
      d.confidence = *label == query.options[0] ? positive : 1.0 - positive;
      d.method = "logscore";
    } else {
      d.confidence = 1.0;
      d.method = "hard_label";
    }
    return d;
  }
  Throw(ErrorCode::kJudgeFormat,
        "no valid " + query.options[0] + "/" + query.options[1] +
            " answer for " + query.question_id + " after one re-ask");
}

int JudgeGateway::CountComponents(const std::string& category,
                                  const Bytes& image,
                                  const std::string& question_id) {
  if (Trim(category).empty()) Throw(ErrorCode::kConfig, "empty category");
  JudgeQuery query;
  query.question_id = question_id.empty() ? "CN/" + category : question_id;
  query.template_id = std::string(kJudgeCountTemplate);
  query.slots = {{"CATEGORY", category}};
  query.images = {image};
  query.decode.top_logprobs = 0;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const ChatResponse response =
        client_->Complete(query.ToRequest(model_, attempt > 0));
    if (const auto count = ParseCount(response.text)) return *count;
  }
  Throw(ErrorCode::kJudgeFormat,
        "no valid count for '" + category + "' after one re-ask");
}

VoteResult JudgeGateway::SelfConsistency(const JudgeQuery& query,
                                         int repetitions) {
  if (repetitions < 1) Throw(ErrorCode::kConfig, "repetitions must be >= 1");
  query.Validate();
  VoteResult result;
  result.repetitions = repetitions;
  result.positive = query.options[0];
  for (const std::string& option : query.options) result.tallies[option] = 0;
  for (int r = 0; r < repetitions; ++r) {
    JudgeQuery sample = query;
    sample.decode.temperature = kVoteTemperature;
    sample.decode.top_p = kVoteTopP;
    sample.decode.seed = r;
    sample.decode.top_logprobs = 0;
    const JudgeDecision d = ForcedChoice(sample);
    ++result.tallies[d.answer];
    result.transcript_refs.push_back(d.transcript_ref);
  }
  result.confidence = static_cast<double>(result.tallies[result.positive]) /
                      static_cast<double>(repetitions);
  return result;
}

}  // namespace stepwise
