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

#include <atomic>
#include <cstdlib>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "stepwise/annotate/chat_client.h"
#include "stepwise/common/error.h"
#include "stepwise/common/file_io.h"
#include "test_util.h"

namespace stepwise {
namespace {

ChatRequest SampleRequest(const std::string& text = "hello") {
  ChatRequest request;
  request.template_id = "judge_af";
  request.model = "m";
  request.messages = {{"system", "sys", {}}, {"user", text, {{1, 2, 3}}}};
  request.decode.top_logprobs = 5;
  return request;
}

TEST(ChatRequestTest, BodyShape) {
  const nlohmann::json body = SampleRequest().Body();
  EXPECT_EQ(body["model"], "m");
  EXPECT_EQ(body["messages"][0]["content"], "sys");
  const auto& parts = body["messages"][1]["content"];
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0]["text"], "hello");
  EXPECT_EQ(parts[1]["image_url"]["url"], "data:image/png;base64,AQID");
  EXPECT_EQ(body["logprobs"], true);
  EXPECT_EQ(body["top_logprobs"], 5);
  EXPECT_EQ(body["temperature"], 0.0);
  EXPECT_FALSE(body.contains("seed"));
}

TEST(ChatRequestTest, CacheKeyCoversContent) {
  const std::string key = SampleRequest().CacheKey();
  EXPECT_EQ(key.size(), 64u);
  EXPECT_EQ(SampleRequest().CacheKey(), key);
  EXPECT_NE(SampleRequest("other").CacheKey(), key);
  ChatRequest image = SampleRequest();
  image.messages[1].images[0][0] = 9;
  EXPECT_NE(image.CacheKey(), key);
  ChatRequest templ = SampleRequest();
  templ.template_id = "judge_vt";
  EXPECT_NE(templ.CacheKey(), key);
  ChatRequest seeded = SampleRequest();
  seeded.decode.seed = 4;
  EXPECT_NE(seeded.CacheKey(), key);
  EXPECT_EQ(SampleRequest().UserText(), "hello");
}

TEST(ChatResponseTest, ParseCompletionBody) {
  const auto body = nlohmann::json::parse(R"({
    "choices": [{"message": {"content": "Yes"},
                 "logprobs": {"content": [{"token": "Yes", "logprob": -0.1,
                   "top_logprobs": [{"token": "Yes", "logprob": -0.1},
                                    {"token": "No", "logprob": -2.4}]}]}}]})");
  const ChatResponse r = ParseCompletionBody(body);
  EXPECT_EQ(r.text, "Yes");
  ASSERT_EQ(r.logprobs.size(), 1u);
  EXPECT_EQ(r.logprobs[0].top[1].first, "No");
  EXPECT_DOUBLE_EQ(r.logprobs[0].top[1].second, -2.4);
  const ChatResponse back = ChatResponseFromJson(ToJson(r));
  EXPECT_EQ(back.text, r.text);
  EXPECT_EQ(back.logprobs, r.logprobs);
  EXPECT_THROW(ParseCompletionBody(nlohmann::json::object()), Error);
  EXPECT_THROW(ParseCompletionBody({{"choices", nlohmann::json::array()}}),
               Error);
}

TEST(MockClientTest, DeterministicForcedChoice) {
  MockChatClient mock;
  const ChatResponse a = mock.Complete(SampleRequest());
  const ChatResponse b = mock.Complete(SampleRequest());
  EXPECT_EQ(a.text, b.text);
  EXPECT_EQ(a.logprobs, b.logprobs);
  ASSERT_EQ(a.logprobs.size(), 1u);
  ASSERT_EQ(a.logprobs[0].top.size(), 2u);
  EXPECT_GT(a.logprobs[0].top[0].second, a.logprobs[0].top[1].second);
  EXPECT_EQ(mock.calls(), 2);

  MockChatClient scripted(ScriptedResponder({"one", "two"}));
  EXPECT_EQ(scripted.Complete(SampleRequest()).text, "one");
  EXPECT_EQ(scripted.Complete(SampleRequest()).text, "two");
  EXPECT_EQ(scripted.Complete(SampleRequest()).text, "two");
}

TEST(CachingClientTest, HitsMissesAndTranscript) {
  testing::TempDir dir;
  auto inner = std::make_shared<MockChatClient>();
  CachingChatClient cache(inner, dir.path(), ".json");
  const ChatResponse first = cache.Complete(SampleRequest());
  EXPECT_FALSE(first.cached);
  const ChatResponse second = cache.Complete(SampleRequest());
  EXPECT_TRUE(second.cached);
  EXPECT_EQ(second.text, first.text);
  EXPECT_EQ(second.logprobs, first.logprobs);
  cache.Complete(SampleRequest("other"));
  EXPECT_EQ(cache.hits(), 1);
  EXPECT_EQ(cache.misses(), 2);
  EXPECT_EQ(inner->calls(), 2);

  const auto record = ReadJsonFile(cache.PathFor(SampleRequest().CacheKey()));
  EXPECT_EQ(record["template_id"], "judge_af");
  EXPECT_EQ(record["client"], "mock");
  const std::string url =
      record["request"]["messages"][1]["content"][1]["image_url"]["url"];
  EXPECT_EQ(url.rfind("sha256:", 0), 0u);

  // A fresh client over the same directory replays without calling through.
  auto cold = std::make_shared<MockChatClient>();
  CachingChatClient replay(cold, dir.path(), ".json");
  EXPECT_EQ(replay.Complete(SampleRequest()).text, first.text);
  EXPECT_EQ(cold->calls(), 0);
}

TEST(CachingClientTest, ConcurrentSameKeyCallsOnce) {
  testing::TempDir dir;
  auto inner = std::make_shared<MockChatClient>();
  CachingChatClient cache(inner, dir.path(), ".json");
  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&] { cache.Complete(SampleRequest()); });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(inner->calls(), 1);
  EXPECT_EQ(cache.hits(), 7);
}

TEST(RateLimitTest, TokenBucketBurstThenRefill) {
  TokenBucket bucket(2.0, 3);
  const auto t0 = TokenBucket::Clock::now() + std::chrono::seconds(1);
  // The bucket starts full; one second later it is still capped at 3.
  EXPECT_TRUE(bucket.TryAcquire(t0));
  EXPECT_TRUE(bucket.TryAcquire(t0));
  EXPECT_TRUE(bucket.TryAcquire(t0));
  EXPECT_FALSE(bucket.TryAcquire(t0));
  EXPECT_FALSE(bucket.TryAcquire(t0 + std::chrono::milliseconds(400)));
  EXPECT_TRUE(bucket.TryAcquire(t0 + std::chrono::milliseconds(600)));
  EXPECT_FALSE(bucket.TryAcquire(t0 + std::chrono::milliseconds(600)));
}

TEST(RateLimitTest, InFlightLimiterCapsConcurrency) {
  InFlightLimiter limiter(2);
  std::atomic<int> active{0};
  std::atomic<int> worst{0};
  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&] {
      limiter.Enter();
      const int now = ++active;
      int seen = worst.load();
      while (now > seen && !worst.compare_exchange_weak(seen, now)) {
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
      --active;
      limiter.Leave();
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_LE(worst.load(), 2);
  EXPECT_LE(limiter.peak(), 2);
  EXPECT_GE(limiter.peak(), 1);
}

TEST(EndpointConfigTest, Validate) {
  EndpointConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  cfg.max_retries = -1;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = {};
  cfg.timeout_s = 0;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = {};
  EXPECT_THROW(HttpChatClient{cfg}, Error);  // empty base URL
}

// Local chat-completions server that fails the first `failures` requests
// with `fail_status`.
class FakeEndpoint {
 public:
  FakeEndpoint(int failures, int fail_status) {
    server_.Post("/v1/chat/completions", [=, this](const httplib::Request& req,
                                                   httplib::Response& res) {
      const int index = requests_++;
      last_auth_ = req.get_header_value("Authorization");
      last_body_ = req.body;
      if (index < failures) {
        res.status = fail_status;
        res.set_content("nope", "text/plain");
        return;
      }
      res.set_content(
          R"({"choices":[{"message":{"content":"Detached"}}]})",
          "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeEndpoint() {
    server_.stop();
    thread_.join();
  }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }
  int requests() const { return requests_.load(); }
  const std::string& last_auth() const { return last_auth_; }
  const std::string& last_body() const { return last_body_; }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> requests_{0};
  std::string last_auth_;
  std::string last_body_;
};

EndpointConfig FastConfig(const std::string& url) {
  EndpointConfig cfg;
  cfg.base_url = url;
  cfg.backoff_initial_s = 0.001;
  cfg.requests_per_second = 1000;
  cfg.max_retries = 3;
  cfg.timeout_s = 5;
  cfg.credential_env = "STEPWISE_TEST_TOKEN";
  return cfg;
}

TEST(HttpClientTest, RetriesServerErrorsThenSucceeds) {
  FakeEndpoint endpoint(2, 503);
  ::setenv("STEPWISE_TEST_TOKEN", "secret", 1);
  HttpChatClient client(FastConfig(endpoint.url()));
  ChatRequest request = SampleRequest();
  request.model.clear();
  const ChatResponse r = client.Complete(request);
  EXPECT_EQ(r.text, "Detached");
  EXPECT_EQ(endpoint.requests(), 3);
  EXPECT_EQ(endpoint.last_auth(), "Bearer secret");
  EXPECT_EQ(nlohmann::json::parse(endpoint.last_body())["model"], "gpt-4o");
  ::unsetenv("STEPWISE_TEST_TOKEN");
}

TEST(HttpClientTest, RetriesRateLimitAndGivesUp) {
  FakeEndpoint endpoint(100, 429);
  EndpointConfig cfg = FastConfig(endpoint.url());
  cfg.max_retries = 2;
  HttpChatClient client(cfg);
  try {
    client.Complete(SampleRequest());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEndpoint);
    EXPECT_NE(std::string(e.what()).find("HTTP 429"), std::string::npos);
  }
  EXPECT_EQ(endpoint.requests(), 3);
}

TEST(HttpClientTest, ClientErrorsFailFast) {
  FakeEndpoint endpoint(100, 400);
  HttpChatClient client(FastConfig(endpoint.url()));
  EXPECT_THROW(client.Complete(SampleRequest()), Error);
  EXPECT_EQ(endpoint.requests(), 1);
}

TEST(HttpClientTest, TransportErrorIsEndpointError) {
  EndpointConfig cfg = FastConfig("http://127.0.0.1:1");
  cfg.max_retries = 1;
  HttpChatClient client(cfg);
  try {
    client.Complete(SampleRequest());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEndpoint);
  }
}

}  // namespace
}  // namespace stepwise
