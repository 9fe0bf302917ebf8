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
#include <httplib.h>

#include <atomic>
#include <map>
#include <thread>

#include "claimgate/common/error.hpp"
#include "claimgate/llm/gateway.hpp"
#include "claimgate/llm/http_provider.hpp"
#include "support/temp_dir.hpp"

namespace claimgate::llm {
namespace {

// Minimal OpenAI-compatible endpoint on a loopback port.
class FakeServer {
 public:
  FakeServer() {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      last_body = Json::parse(req.body);
      last_auth = req.get_header_value("Authorization");
      int n = hits++;
      if (n < static_cast<int>(fail_first.size())) {
        res.status = fail_first[static_cast<std::size_t>(n)];
        res.set_content(R"({"error":"nope"})", "application/json");
        return;
      }
      Json reply = {{"choices", {{{"message", {{"role", "assistant"}, {"content", reply_text}}}}}},
                    {"usage", {{"prompt_tokens", 11}, {"completion_tokens", 3}}}};
      res.set_content(reply.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeServer() {
    server_.stop();
    thread_.join();
  }
  std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }

  std::vector<int> fail_first;
  std::string reply_text = "Verdict: FEASIBLE";
  Json last_body;
  std::string last_auth;
  std::atomic<int> hits{0};

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

ChatRequest request(const std::string& provider = "local") {
  ChatRequest r;
  r.handle = {provider, "qwen3-32b", 0.6, 128, true};
  r.messages = {{Role::kSystem, "You are a verifier.", std::nullopt},
                {Role::kUser, "Claim: x", std::nullopt}};
  return r;
}

TEST(HttpProvider, SendsOpenAiCompatibleBody) {
  FakeServer server;
  HttpChatProvider p({server.base_url(), "sk-test", std::chrono::seconds(10), true});
  auto req = request();
  auto prepared = PreparedRequest::prepare(req);
  auto res = p.send(prepared);
  EXPECT_EQ(res.text, "Verdict: FEASIBLE");
  EXPECT_EQ(res.usage.prompt, 11);
  EXPECT_EQ(res.usage.completion, 3);
  EXPECT_EQ(server.last_auth, "Bearer sk-test");
  EXPECT_EQ(server.last_body["model"], "qwen3-32b");
  EXPECT_EQ(server.last_body["temperature"], 0.6);
  EXPECT_EQ(server.last_body["max_tokens"], 128);
  EXPECT_EQ(server.last_body["chat_template_kwargs"]["enable_thinking"], true);
  EXPECT_EQ(server.last_body["messages"][0]["role"], "system");
  EXPECT_EQ(server.last_body["messages"][1]["content"], "Claim: x");
}

TEST(HttpProvider, ImagesBecomeDataUrls) {
  testing_support::TempDir dir;
  write_file_atomic(dir / "fig.png", "abc");
  FakeServer server;
  HttpChatProvider p({server.base_url(), "", std::chrono::seconds(10), false});
  auto req = request();
  req.messages[1].image = dir / "fig.png";
  auto prepared = PreparedRequest::prepare(req);
  p.send(prepared);
  const auto& content = server.last_body["messages"][1]["content"];
  ASSERT_TRUE(content.is_array());
  EXPECT_EQ(content[0]["text"], "Claim: x");
  EXPECT_EQ(content[1]["image_url"]["url"], "data:image/png;base64,YWJj");
  EXPECT_FALSE(server.last_body.contains("chat_template_kwargs"));
  EXPECT_TRUE(server.last_auth.empty());
}

TEST(HttpProvider, ReasoningModelsUseCompletionTokenField) {
  HttpChatProvider p({"https://example.invalid/v1", "", std::chrono::seconds(1), false});
  auto req = request();
  req.handle.model = "o4-mini";
  auto prepared = PreparedRequest::prepare(req);
  auto body = p.build_body(prepared);
  EXPECT_TRUE(body.contains("max_completion_tokens"));
  EXPECT_FALSE(body.contains("max_tokens"));
}

TEST(HttpProvider, GatewayRetriesServerErrors) {
  FakeServer server;
  server.fail_first = {503, 500};
  GatewayOptions o;
  o.sleep = [](auto) {};
  Gateway g(o);
  g.register_provider("local", std::make_shared<HttpChatProvider>(
                                   HttpProviderConfig{server.base_url(), "", std::chrono::seconds(10), true}));
  EXPECT_EQ(g.complete(request()).text, "Verdict: FEASIBLE");
  EXPECT_EQ(server.hits.load(), 3);
}

TEST(HttpProvider, StatusTaxonomy) {
  FakeServer server;
  server.fail_first = {401};
  GatewayOptions o;
  o.sleep = [](auto) {};
  Gateway g(o);
  g.register_provider("local", std::make_shared<HttpChatProvider>(
                                   HttpProviderConfig{server.base_url(), "", std::chrono::seconds(10), false}));
  try {
    g.complete(request());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kProviderAuth);
  }
  EXPECT_EQ(server.hits.load(), 1);
}

TEST(HttpProvider, ConnectionFailureIsTransient) {
  HttpChatProvider p({"http://127.0.0.1:1/v1", "", std::chrono::seconds(2), false});
  auto req = request();
  auto prepared = PreparedRequest::prepare(req);
  try {
    p.send(prepared);
    FAIL();
  } catch (const ProviderFailure& f) {
    EXPECT_EQ(f.kind(), ProviderFailure::Kind::kTransient);
  }
}

TEST(BuiltinProviders, EnvironmentLookup) {
  std::map<std::string, std::string> vars = {{"CLAIMGATE_OPENAI_API_KEY", "k"}};
  EnvLookup env = [&](const std::string& n) -> std::optional<std::string> {
    auto it = vars.find(n);
    if (it == vars.end()) return std::nullopt;
    return it->second;
  };
  EXPECT_NE(make_builtin_provider("openai", env), nullptr);
  EXPECT_NE(make_builtin_provider("local", env), nullptr);
  try {
    make_builtin_provider("gemini", env);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kProviderAuth);
  }
  try {
    make_builtin_provider("acme", env);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownProvider);
  }
}

}  // namespace
}  // namespace claimgate::llm
