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

#ifndef STEPWISE_ANNOTATE_CHAT_CLIENT_H_
#define STEPWISE_ANNOTATE_CHAT_CLIENT_H_

#include <array>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "stepwise/common/hash.h"

namespace stepwise {

struct ChatMessage {
  std::string role;  // "system" or "user"
  std::string text;
  std::vector<Bytes> images;  // PNG bytes, sent inline as base-64 data URLs
};

struct DecodeParams {
  double temperature = 0.0;
  std::optional<double> top_p;
  std::optional<int> seed;
  // Requests top-k alternatives per generated token when > 0.
  int top_logprobs = 0;
  int max_tokens = 512;
};

struct ChatRequest {
  std::string template_id;
  std::string model;
  std::vector<ChatMessage> messages;
  DecodeParams decode;

  // Chat-completions request body. Keys are sorted, so the dump is a pure
  // function of the request.
  nlohmann::json Body() const;
  // sha256 over the template id and the serialized body.
  std::string CacheKey() const;
  // Text of the last user message.
  const std::string& UserText() const;
};

struct TokenLogprob {
  std::string token;
  double logprob = 0.0;
  std::vector<std::pair<std::string, double>> top;

  bool operator==(const TokenLogprob&) const = default;
};

struct ChatResponse {
  std::string text;
  std::vector<TokenLogprob> logprobs;
  // Set by the caching layer on a hit.
  bool cached = false;
  std::string cache_key;
};

nlohmann::json ToJson(const ChatResponse& response);
ChatResponse ChatResponseFromJson(const nlohmann::json& j);

// Parses a chat-completions response body. Throws EndpointError when the
// body has no choices.
ChatResponse ParseCompletionBody(const nlohmann::json& body);

class ChatClient {
 public:
  virtual ~ChatClient() = default;
  // Throws EndpointError on transport failure after retries.
  virtual ChatResponse Complete(const ChatRequest& request) = 0;
  virtual std::string id() const = 0;
};

struct EndpointConfig {
  std::string base_url;
  std::string path = "/v1/chat/completions";
  std::string model = "gpt-4o";
  // Name of the environment variable holding the bearer token.
  std::string credential_env = "STEPWISE_API_KEY";
  double timeout_s = 60.0;
  int max_retries = 3;
  double backoff_initial_s = 1.0;
  std::filesystem::path cache_dir;
  int max_in_flight = 4;
  double requests_per_second = 2.0;
  int burst = 4;

  // Throws ConfigError when retries < 0, timeout <= 0 or limits < 1.
  void Validate() const;
};

// Token bucket: Acquire() blocks until a token is available.
class TokenBucket {
 public:
  using Clock = std::chrono::steady_clock;

  TokenBucket(double rate_per_s, int burst);
  void Acquire();
  // Non-blocking variant used by tests; `now` is injectable.
  bool TryAcquire(Clock::time_point now);

 private:
  void Refill(Clock::time_point now);

  std::mutex mu_;
  double rate_;
  double capacity_;
  double tokens_;
  Clock::time_point last_;
};

// Counting gate on concurrent requests.
class InFlightLimiter {
 public:
  explicit InFlightLimiter(int limit) : limit_(limit) {}
  void Enter();
  void Leave();
  int peak() const { return peak_.load(); }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  int limit_;
  int active_ = 0;
  std::atomic<int> peak_{0};
};

// HTTP client for a chat-completions compatible endpoint. Retries transport
// errors, 429 and 5xx with exponential backoff; other HTTP errors fail fast.
class HttpChatClient : public ChatClient {
 public:
  explicit HttpChatClient(EndpointConfig config);
  ChatResponse Complete(const ChatRequest& request) override;
  std::string id() const override { return "endpoint:" + config_.model; }

 private:
  EndpointConfig config_;
  std::string token_;
  TokenBucket bucket_;
  InFlightLimiter limiter_;
};

// Offline client. The default responder returns canned text derived from the
// template id and request contents, with option logprobs keyed by the request
// hash, so identical requests give identical answers.
class MockChatClient : public ChatClient {
 public:
  using Responder =
      std::function<ChatResponse(const ChatRequest& request, int call_index)>;

  MockChatClient();
  explicit MockChatClient(Responder responder);

  ChatResponse Complete(const ChatRequest& request) override;
  std::string id() const override { return "mock"; }

  int calls() const { return calls_.load(); }

  static ChatResponse DefaultResponse(const ChatRequest& request);

 private:
  Responder responder_;
  std::atomic<int> calls_{0};
};

// Replays text responses, one per call, repeating the last one.
MockChatClient::Responder ScriptedResponder(std::vector<std::string> replies);

// Wraps a client with a content-addressed disk cache:
// <dir>/<CacheKey()><suffix>. Each file stores the request body alongside
// the response, so it doubles as the transcript record.
class CachingChatClient : public ChatClient {
 public:
  CachingChatClient(std::shared_ptr<ChatClient> inner,
                    std::filesystem::path cache_dir, std::string suffix);
  ChatResponse Complete(const ChatRequest& request) override;
  std::string id() const override { return inner_->id(); }

  std::filesystem::path PathFor(const std::string& key) const;
  int hits() const { return hits_.load(); }
  int misses() const { return misses_.load(); }

 private:
  std::mutex& LockFor(const std::string& key);

  std::shared_ptr<ChatClient> inner_;
  std::filesystem::path dir_;
  std::string suffix_;
  std::array<std::mutex, 16> stripes_;
  std::atomic<int> hits_{0};
  std::atomic<int> misses_{0};
};

inline constexpr const char* kAnnotateCacheSuffix = ".resp";
inline constexpr const char* kJudgeCacheSuffix = ".json";

}  // namespace stepwise

#endif  // STEPWISE_ANNOTATE_CHAT_CLIENT_H_
