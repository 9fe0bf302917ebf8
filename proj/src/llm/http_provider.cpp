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

#include "claimgate/llm/http_provider.hpp"

#include <httplib.h>

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "claimgate/common/error.hpp"

namespace claimgate::llm {
namespace {

// Splits "https://host:port/v1" into "https://host:port" and "/v1".
std::pair<std::string, std::string> split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::kInvalidRequest, "base URL needs a scheme: " + url);
  }
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, ""};
  std::string path = url.substr(path_start);
  while (!path.empty() && path.back() == '/') path.pop_back();
  return {url.substr(0, path_start), path};
}

// o-series and gpt-5 reasoning models take max_completion_tokens.
bool uses_completion_tokens(const std::string& model) {
  return (model.size() > 1 && model[0] == 'o' && std::isdigit(static_cast<unsigned char>(model[1]))) ||
         model.rfind("gpt-5", 0) == 0;
}

std::string content_text(const Json& content) {
  if (content.is_string()) return content.get<std::string>();
  std::string out;
  if (content.is_array()) {
    for (const auto& part : content) {
      if (part.value("type", "") == "text") out += part.value("text", "");
    }
  }
  return out;
}

}  // namespace

HttpChatProvider::HttpChatProvider(HttpProviderConfig config) : config_(std::move(config)) {
  std::tie(scheme_host_port_, path_prefix_) = split_url(config_.base_url);
}

Json HttpChatProvider::build_body(const PreparedRequest& prepared) const {
  const ChatRequest& r = *prepared.request;
  Json messages = Json::array();
  for (std::size_t i = 0; i < r.messages.size(); ++i) {
    const auto& m = r.messages[i];
    Json msg = {{"role", to_string(m.role)}};
    if (prepared.attachments[i]) {
      const auto& a = *prepared.attachments[i];
      msg["content"] = Json::array(
          {{{"type", "text"}, {"text", m.text}},
           {{"type", "image_url"},
            {"image_url", {{"url", "data:" + a.mime_type + ";base64," + base64_encode(a.bytes)}}}}});
    } else {
      msg["content"] = m.text;
    }
    messages.push_back(std::move(msg));
  }
  Json body = {{"model", r.handle.model}, {"messages", std::move(messages)}};
  body["temperature"] = r.handle.temperature;
  body[uses_completion_tokens(r.handle.model) ? "max_completion_tokens" : "max_tokens"] =
      r.handle.max_output_tokens;
  if (config_.thinking_kwarg) {
    body["chat_template_kwargs"] = {{"enable_thinking", r.handle.thinking}};
  }
  return body;
}

ChatResponse HttpChatProvider::send(const PreparedRequest& prepared) {
  httplib::Client client(scheme_host_port_);
  client.set_connection_timeout(std::chrono::seconds(30));
  client.set_read_timeout(config_.timeout);
  client.set_write_timeout(std::chrono::seconds(60));
  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);

  std::string body = build_body(prepared).dump();
  auto res = client.Post(path_prefix_ + "/chat/completions", headers, body, "application/json");
  if (!res) {
    throw ProviderFailure(ProviderFailure::Kind::kTransient, 0,
                          "request to " + config_.base_url + " failed: " +
                              httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw ProviderFailure::from_status(
        res->status, "HTTP " + std::to_string(res->status) + " from " + config_.base_url + ": " +
                         res->body.substr(0, 400));
  }
  Json payload;
  try {
    payload = Json::parse(res->body);
  } catch (const Json::parse_error&) {
    throw ProviderFailure(ProviderFailure::Kind::kTransient, res->status,
                          "unparseable response body from " + config_.base_url);
  }
  ChatResponse out;
  try {
    out.text = content_text(payload.at("choices").at(0).at("message").at("content"));
  } catch (const Json::exception&) {
    throw ProviderFailure(ProviderFailure::Kind::kPermanent, res->status,
                          "response has no choices[0].message.content");
  }
  if (payload.contains("usage") && payload["usage"].is_object()) {
    out.usage.prompt = payload["usage"].value("prompt_tokens", std::int64_t{0});
    out.usage.completion = payload["usage"].value("completion_tokens", std::int64_t{0});
  }
  out.raw = std::move(payload);
  return out;
}

EnvLookup process_env() {
  return [](const std::string& name) -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    if (!v) return std::nullopt;
    return std::string(v);
  };
}

std::shared_ptr<ChatProvider> make_builtin_provider(const std::string& key, const EnvLookup& env) {
  static const std::pair<const char*, const char*> kDefaults[] = {
      {"openai", "https://api.openai.com/v1"},
      {"gemini", "https://generativelanguage.googleapis.com/v1beta/openai"},
      {"anthropic", "https://api.anthropic.com/v1"},
      {"local", "http://localhost:8000/v1"},
  };
  std::string upper = key;
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (const auto& [name, url] : kDefaults) {
    if (key != name) continue;
    HttpProviderConfig cfg;
    cfg.base_url = env("CLAIMGATE_" + upper + "_BASE_URL").value_or(url);
    auto api_key = env("CLAIMGATE_" + upper + "_API_KEY");
    if (!api_key && key != "local") {
      throw Error(ErrorCode::kProviderAuth,
                  "set CLAIMGATE_" + upper + "_API_KEY to use provider '" + key + "'");
    }
    cfg.api_key = api_key.value_or("");
    cfg.thinking_kwarg = key == "local";
    return std::make_shared<HttpChatProvider>(std::move(cfg));
  }
  throw Error(ErrorCode::kUnknownProvider, "unknown provider '" + key + "'");
}

}  // namespace claimgate::llm
