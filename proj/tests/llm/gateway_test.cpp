/*
 * Copyright 2026 The Claimgate Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include "claimgate/common/error.hpp"
#include "claimgate/common/parallel.hpp"
#include "claimgate/llm/gateway.hpp"
#include "claimgate/llm/mock_provider.hpp"
#include "support/temp_dir.hpp"

namespace claimgate::llm {
namespace {

using testing_support::count_files;
using testing_support::TempDir;

ChatRequest user_request(const std::string& text, double temperature = 0.0,
                         const std::string& provider = "mock") {
  ChatRequest r;
  r.handle = {provider, "m1", temperature, 256, false};
  r.messages.push_back({Role::kUser, text, std::nullopt});
  return r;
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kUsage;
}

// Fails with the given statuses in order, then answers "ok".
class ScriptedFailures : public ChatProvider {
 public:
  explicit ScriptedFailures(std::vector<int> statuses) : statuses_(std::move(statuses)) {}
  ChatResponse send(const PreparedRequest&) override {
    std::size_t n = calls++;
    if (n < statuses_.size()) throw ProviderFailure::from_status(statuses_[n], "scripted");
    ChatResponse r;
    r.text = "ok";
    return r;
  }
  std::atomic<std::size_t> calls{0};

 private:
  std::vector<int> statuses_;
};

GatewayOptions options_with(const TempDir& dir, std::vector<std::chrono::milliseconds>* sleeps) {
  GatewayOptions o;
  o.cache_dir = dir / "cache";
  o.audit_log = dir / "audit.jsonl";
  o.sleep = [sleeps](std::chrono::milliseconds d) {
    if (sleeps) sleeps->push_back(d);
  };
  return o;
}

TEST(Gateway, SecondIdenticalRequestIsACacheHit) {
  TempDir dir;
  Gateway g(options_with(dir, nullptr));
  auto mock = std::make_shared<MockProvider>(
      std::vector<MockRule>{{{"claim"}, std::nullopt, {"Verdict: INFEASIBLE"}}});
  g.register_provider("mock", mock);
  auto first = g.complete(user_request("a claim"));
  auto second = g.complete(user_request("a claim"));
  EXPECT_FALSE(first.cache_hit);
  EXPECT_TRUE(second.cache_hit);
  EXPECT_EQ(first.text, "Verdict: INFEASIBLE");
  EXPECT_EQ(second.text, first.text);
  EXPECT_EQ(mock->calls(), 1u);
  EXPECT_EQ(count_files(dir / "cache"), 1u);
  EXPECT_EQ(read_jsonl(dir / "audit.jsonl").size(), 2u);
  auto stats = g.stats();
  EXPECT_EQ(stats.requests, 2u);
  EXPECT_EQ(stats.cache_hits, 1u);
}

TEST(Gateway, CacheSurvivesNewGatewayInstance) {
  TempDir dir;
  {
    Gateway g(options_with(dir, nullptr));
    g.register_provider("mock", MockProvider::from_json(Json::parse(R"({"default":"first"})")));
    g.complete(user_request("x"));
  }
  Gateway g(options_with(dir, nullptr));
  g.register_provider("mock", MockProvider::from_json(Json::parse(R"({"default":"second"})")));
  auto r = g.complete(user_request("x"));
  EXPECT_TRUE(r.cache_hit);
  EXPECT_EQ(r.text, "first");
}

TEST(Gateway, TemperatureSweepYieldsDistinctEntries) {
  TempDir dir;
  Gateway g(options_with(dir, nullptr));
  g.register_provider("mock", MockProvider::from_json(Json::parse(R"({"default":"v"})")));
  for (double t : {0.0, 0.6, 1.0}) g.complete(user_request("same prompt", t));
  EXPECT_EQ(count_files(dir / "cache"), 3u);
}

TEST(Gateway, CacheKeySensitivity) {
  Gateway g;
  auto base = user_request("hello world");
  std::string k = g.cache_key(base);
  EXPECT_EQ(k.size(), 64u);
  EXPECT_EQ(g.cache_key(base), k);
  auto text = user_request("hello world!");
  EXPECT_NE(g.cache_key(text), k);
  auto salted = base;
  salted.cache_salt = "run-2";
  EXPECT_NE(g.cache_key(salted), k);
  auto model = base;
  model.handle.model = "m2";
  EXPECT_NE(g.cache_key(model), k);
  auto provider = base;
  provider.handle.provider = "other";
  EXPECT_NE(g.cache_key(provider), k);
  auto role = base;
  role.messages[0].role = Role::kAssistant;
  EXPECT_NE(g.cache_key(role), k);
  auto thinking = base;
  thinking.handle.thinking = true;
  EXPECT_NE(g.cache_key(thinking), k);
  // Output-length budget does not change the answer identity.
  auto tokens = base;
  tokens.handle.max_output_tokens = 9;
  EXPECT_EQ(g.cache_key(tokens), k);
}

TEST(Gateway, AttachmentBytesAreHashed) {
  TempDir dir;
  auto img = dir / "chart.png";
  write_file_atomic(img, "PNG-A");
  Gateway g;
  auto r = user_request("describe");
  r.messages[0].image = img;
  std::string k1 = g.cache_key(r);
  write_file_atomic(img, "PNG-B");
  EXPECT_NE(g.cache_key(r), k1);
  r.messages[0].image = dir / "missing.png";
  EXPECT_EQ(code_of([&] { g.cache_key(r); }), ErrorCode::kAttachmentUnreadable);
}

TEST(Gateway, RequestValidation) {
  Gateway g;
  g.register_provider("mock", MockProvider::from_json(Json::parse(R"({"default":"v"})")));
  auto r = user_request("x");
  r.messages.push_back({Role::kSystem, "late system", std::nullopt});
  EXPECT_EQ(code_of([&] { g.complete(r); }), ErrorCode::kInvalidRequest);
  ChatRequest empty;
  empty.handle.provider = "mock";
  EXPECT_EQ(code_of([&] { g.complete(empty); }), ErrorCode::kInvalidRequest);
  EXPECT_EQ(code_of([&] { g.complete(user_request("x", 0, "nope")); }),
            ErrorCode::kUnknownProvider);
}

TEST(Gateway, RetriesTransientFailuresWithBackoff) {
  TempDir dir;
  std::vector<std::chrono::milliseconds> sleeps;
  Gateway g(options_with(dir, &sleeps));
  auto p = std::make_shared<ScriptedFailures>(std::vector<int>{429, 503});
  g.register_provider("mock", p);
  auto r = g.complete(user_request("x"));
  EXPECT_EQ(r.text, "ok");
  EXPECT_EQ(p->calls.load(), 3u);
  ASSERT_EQ(sleeps.size(), 2u);
  EXPECT_EQ(sleeps[0].count(), 500);
  EXPECT_EQ(sleeps[1].count(), 1000);
  EXPECT_EQ(count_files(dir / "cache"), 1u);
  auto audit = read_jsonl(dir / "audit.jsonl");
  ASSERT_EQ(audit.size(), 1u);
  EXPECT_EQ(audit[0]["attempts"], 3);
  EXPECT_EQ(g.stats().retries, 2u);
}

TEST(Gateway, RateLimitSurfacesAfterRetriesExhausted) {
  TempDir dir;
  Gateway g(options_with(dir, nullptr));
  auto p = std::make_shared<ScriptedFailures>(std::vector<int>(10, 429));
  g.register_provider("mock", p);
  EXPECT_EQ(code_of([&] { g.complete(user_request("x")); }), ErrorCode::kProviderRateLimited);
  EXPECT_EQ(p->calls.load(), 4u);  // first attempt + 3 retries
  EXPECT_EQ(count_files(dir / "cache"), 0u);
  auto audit = read_jsonl(dir / "audit.jsonl");
  EXPECT_EQ(audit.back()["error"], "provider-rate-limited");
}

TEST(Gateway, AuthAndPermanentFailuresAreNotRetried) {
  auto auth = std::make_shared<ScriptedFailures>(std::vector<int>{401});
  auto bad = std::make_shared<ScriptedFailures>(std::vector<int>{400});
  auto down = std::make_shared<ScriptedFailures>(std::vector<int>(10, 500));
  GatewayOptions o;
  o.sleep = [](auto) {};
  Gateway fast(o);
  fast.register_provider("auth", auth);
  fast.register_provider("bad", bad);
  fast.register_provider("down", down);
  EXPECT_EQ(code_of([&] { fast.complete(user_request("x", 0, "auth")); }), ErrorCode::kProviderAuth);
  EXPECT_EQ(auth->calls.load(), 1u);
  EXPECT_EQ(code_of([&] { fast.complete(user_request("x", 0, "bad")); }), ErrorCode::kProviderError);
  EXPECT_EQ(bad->calls.load(), 1u);
  EXPECT_EQ(code_of([&] { fast.complete(user_request("x", 0, "down")); }), ErrorCode::kProviderError);
  EXPECT_EQ(down->calls.load(), 4u);
}

// Provider that tracks its own concurrency so the gateway's hook can be
// checked against an independent count.
class SlowProvider : public ChatProvider {
 public:
  ChatResponse send(const PreparedRequest& r) override {
    int now = ++inflight;
    int seen = peak.load();
    while (now > seen && !peak.compare_exchange_weak(seen, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(15));
    --inflight;
    ChatResponse out;
    out.text = r.joined_text();
    return out;
  }
  std::atomic<int> inflight{0};
  std::atomic<int> peak{0};
};

TEST(Gateway, InflightBoundPerProvider) {
  Gateway g;
  auto p = std::make_shared<SlowProvider>();
  g.register_provider("slow", p, 3);
  parallel_for(24, 8, [&](std::size_t i) {
    auto r = g.complete(user_request("req " + std::to_string(i), 0, "slow"));
    ASSERT_EQ(r.text, "req " + std::to_string(i));
  });
  EXPECT_LE(g.max_observed_inflight("slow"), 3u);
  EXPECT_GE(g.max_observed_inflight("slow"), 1u);
  EXPECT_LE(p->peak.load(), 3);
}

TEST(Gateway, ConcurrentIdenticalRequestsCallProviderOnce) {
  TempDir dir;
  Gateway g(options_with(dir, nullptr));
  auto p = std::make_shared<SlowProvider>();
  g.register_provider("slow", p);
  std::atomic<int> hits{0};
  parallel_for(8, 8, [&](std::size_t) {
    if (g.complete(user_request("same", 0, "slow")).cache_hit) ++hits;
  });
  EXPECT_EQ(hits.load(), 7);
  EXPECT_EQ(g.stats().provider_calls, 1u);
  EXPECT_EQ(count_files(dir / "cache"), 1u);
}

}  // namespace
}  // namespace claimgate::llm
