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

#include "stepwise/annotate/chat_client.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <httplib.h>

#include "stepwise/common/error.h"
#include "stepwise/common/file_io.h"

namespace stepwise {

nlohmann::json ChatRequest::Body() const {
  nlohmann::json messages_json = nlohmann::json::array();
  for (const ChatMessage& m : messages) {
    if (m.images.empty()) {
      messages_json.push_back({{"role", m.role}, {"content", m.text}});
      continue;
    }
    nlohmann::json content = nlohmann::json::array();
    content.push_back({{"type", "text"}, {"text", m.text}});
    for (const Bytes& image : m.images) {
      content.push_back(
          {{"type", "image_url"},
           {"image_url",
            {{"url", "data:image/png;base64," + Base64Encode(image)}}}});
    }
    messages_json.push_back({{"role", m.role}, {"content", content}});
  }
  nlohmann::json body = {{"model", model},
                         {"messages", messages_json},
                         {"temperature", decode.temperature},
                         {"max_tokens", decode.max_tokens}};
  if (decode.top_p) body["top_p"] = *decode.top_p;
  if (decode.seed) body["seed"] = *decode.seed;
  if (decode.top_logprobs > 0) {
    body["logprobs"] = true;
    body["top_logprobs"] = decode.top_logprobs;
  }
  return body;
}

std::string ChatRequest::CacheKey() const {
  return Sha256Hex(template_id + "\n" + Body().dump());
}

const std::string& ChatRequest::UserText() const {
  static const std::string kEmpty;
  for (auto it = messages.rbegin(); it != messages.rend(); ++it) {
    if (it->role == "user") return it->text;
  }
  return kEmpty;
}

nlohmann::json ToJson(const ChatResponse& response) {
  nlohmann::json logprobs = nlohmann::json::array();
  for (const TokenLogprob& t : response.logprobs) {
    nlohmann::json top = nlohmann::json::array();
    for (const auto& [token, lp] : t.top) {
      top.push_back({{"token", token}, {"logprob", lp}});
    }
    logprobs.push_back(
        {{"token", t.token}, {"logprob", t.logprob}, {"top_logprobs", top}});
  }
  return {{"text", response.text}, {"logprobs", logprobs}};
}

ChatResponse ChatResponseFromJson(const nlohmann::json& j) {
  ChatResponse response;
  response.text = j.at("text").get<std::string>();
  for (const auto& t : j.value("logprobs", nlohmann::json::array())) {
    TokenLogprob entry;
    entry.token = t.at("token").get<std::string>();
    entry.logprob = t.at("logprob").get<double>();
    for (const auto& alt : t.value("top_logprobs", nlohmann::json::array())) {
      entry.top.emplace_back(alt.at("token").get<std::string>(),
                             alt.at("logprob").get<double>());
    }
    response.logprobs.push_back(std::move(entry));
  }
  return response;
}

ChatResponse ParseCompletionBody(const nlohmann::json& body) {
  if (!body.contains("choices") || !body["choices"].is_array() ||
      body["choices"].empty()) {
    Throw(ErrorCode::kEndpoint, "completion body has no choices");
  }
  const auto& choice = body["choices"][0];
  ChatResponse response;
  const auto& content = choice.at("message").at("content");
  response.text = content.is_string() ? content.get<std::string>() : "";
  if (choice.contains("logprobs") && choice["logprobs"].is_object() &&
      choice["logprobs"].contains("content") &&
      choice["logprobs"]["content"].is_array()) {
    nlohmann::json wrapped = {{"text", response.text},
                              {"logprobs", choice["logprobs"]["content"]}};
    response.logprobs = ChatResponseFromJson(wrapped).logprobs;
  }
  return response;
}

void EndpointConfig::Validate() const {
  if (max_retries < 0) Throw(ErrorCode::kConfig, "max_retries must be >= 0");
  if (!(timeout_s > 0)) Throw(ErrorCode::kConfig, "timeout must be > 0");
  if (max_in_flight < 1) Throw(ErrorCode::kConfig, "max_in_flight must be >= 1");
  if (!(requests_per_second > 0) || burst < 1) {
    Throw(ErrorCode::kConfig, "rate limit must be positive");
  }
}

TokenBucket::TokenBucket(double rate_per_s, int burst)
    : rate_(rate_per_s),
      capacity_(burst),
      tokens_(burst),
      last_(Clock::now()) {}

void TokenBucket::Refill(Clock::time_point now) {
  if (now > last_) {
    const double elapsed = std::chrono::duration<double>(now - last_).count();
    tokens_ = std::min(capacity_, tokens_ + elapsed * rate_);
    last_ = now;
  }
}

bool TokenBucket::TryAcquire(Clock::time_point now) {
  std::lock_guard<std::mutex> lock(mu_);
  Refill(now);
  if (tokens_ >= 1.0) {
    tokens_ -= 1.0;
    return true;
  }
  return false;
}

void TokenBucket::Acquire() {
  while (true) {
    double wait_s = 0.0;
    {
      std::lock_guard<std::mutex> lock(mu_);
      Refill(Clock::now());
      if (tokens_ >= 1.0) {
        tokens_ -= 1.0;
        return;
      }
      wait_s = (1.0 - tokens_) / rate_;
    }
    std::this_thread::sleep_for(std::chrono::duration<double>(wait_s));
  }
}

void InFlightLimiter::Enter() {
  std::unique_lock<std::mutex> lock(mu_);
  cv_.wait(lock, [&] { return active_ < limit_; });
  ++active_;
  int peak = peak_.load();
  while (active_ > peak && !peak_.compare_exchange_weak(peak, active_)) {
  }
}

void InFlightLimiter::Leave() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    --active_;
  }
  cv_.notify_one();
}

HttpChatClient::HttpChatClient(EndpointConfig config)
    : config_(std::move(config)),
      bucket_(config_.requests_per_second, config_.burst),
      limiter_(config_.max_in_flight) {
  config_.Validate();
  if (config_.base_url.empty()) {
    Throw(ErrorCode::kConfig, "endpoint base URL is empty");
  }
  if (!config_.credential_env.empty()) {
    if (const char* value = std::getenv(config_.credential_env.c_str())) {
      token_ = value;
    }
  }
}

ChatResponse HttpChatClient::Complete(const ChatRequest& request) {
  ChatRequest sent = request;
  if (sent.model.empty()) sent.model = config_.model;
  const std::string body = sent.Body().dump();
  httplib::Headers headers;
  if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);

  struct Gate {
    InFlightLimiter& limiter;
    explicit Gate(InFlightLimiter& l) : limiter(l) { limiter.Enter(); }
    ~Gate() { limiter.Leave(); }
  } gate(limiter_);

  std::string last_error;
  double backoff = config_.backoff_initial_s;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::duration<double>(backoff));
      backoff *= 2.0;
    }
    bucket_.Acquire();
    httplib::Client client(config_.base_url);
    const auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::duration<double>(config_.timeout_s));
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    auto result =
        client.Post(config_.path, headers, body, "application/json");
    if (!result) {
      last_error = "transport error: " + httplib::to_string(result.error());
      continue;
    }
    const int status = result->status;
    if (status == 429 || status >= 500) {
      last_error = "HTTP " + std::to_string(status);
      continue;
    }
    if (status != 200) {
      Throw(ErrorCode::kEndpoint,
            "HTTP " + std::to_string(status) + ": " + result->body.substr(0, 500));
    }
    nlohmann::json parsed;
    try {
      parsed = nlohmann::json::parse(result->body);
    } catch (const nlohmann::json::exception& e) {
      Throw(ErrorCode::kEndpoint, std::string("invalid JSON body: ") + e.what());
    }
    return ParseCompletionBody(parsed);
  }
  Throw(ErrorCode::kEndpoint, "request failed after " +
                                  std::to_string(config_.max_retries + 1) +
                                  " attempts: " + last_error);
}

MockChatClient::MockChatClient()
    : responder_([](const ChatRequest& r, int) { return DefaultResponse(r); }) {}

MockChatClient::MockChatClient(Responder responder)
    : responder_(std::move(responder)) {}

ChatResponse MockChatClient::Complete(const ChatRequest& request) {
  const int index = calls_++;
  return responder_(request, index);
}

MockChatClient::Responder ScriptedResponder(std::vector<std::string> replies) {
  if (replies.empty()) replies.emplace_back();
  return [replies = std::move(replies)](const ChatRequest&, int index) {
    ChatResponse response;
    response.text =
        replies[std::min<std::size_t>(index, replies.size() - 1)];
    return response;
  };
}

CachingChatClient::CachingChatClient(std::shared_ptr<ChatClient> inner,
                                     std::filesystem::path cache_dir,
                                     std::string suffix)
    : inner_(std::move(inner)),
      dir_(std::move(cache_dir)),
      suffix_(std::move(suffix)) {}

std::filesystem::path CachingChatClient::PathFor(const std::string& key) const {
  return dir_ / (key + suffix_);
}

std::mutex& CachingChatClient::LockFor(const std::string& key) {
  return stripes_[std::hash<std::string>{}(key) % stripes_.size()];
}

ChatResponse CachingChatClient::Complete(const ChatRequest& request) {
  const std::string key = request.CacheKey();
  const std::filesystem::path path = PathFor(key);
  std::lock_guard<std::mutex> lock(LockFor(key));
  if (std::filesystem::exists(path)) {
    const nlohmann::json record = ReadJsonFile(path);
    ChatResponse response = ChatResponseFromJson(record.at("response"));
    response.cached = true;
    response.cache_key = key;
    ++hits_;
    return response;
  }
  ChatResponse response = inner_->Complete(request);
  ++misses_;
  nlohmann::json body = request.Body();
  // Image payloads are large and already hashed into the key.
  for (auto& message : body["messages"]) {
    if (!message["content"].is_array()) continue;
    for (auto& part : message["content"]) {
      if (part["type"] == "image_url") {
        const std::string url = part["image_url"]["url"].get<std::string>();
        part["image_url"]["url"] = "sha256:" + Sha256Hex(url);
      }
    }
  }
  WriteJsonFile(path, {{"key", key},
                       {"template_id", request.template_id},
                       {"client", inner_->id()},
                       {"request", body},
                       {"response", ToJson(response)}});
  response.cache_key = key;
  return response;
}

}  // namespace stepwise
