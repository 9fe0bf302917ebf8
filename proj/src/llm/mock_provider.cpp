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

#include "claimgate/llm/mock_provider.hpp"

#include <algorithm>

#include "claimgate/common/error.hpp"

namespace claimgate::llm {
namespace {

std::string describe(const MockRule& r) {
  Json j = {{"contains", r.contains}};
  if (r.model) j["model"] = *r.model;
  return j.dump();
}

}  // namespace

MockProvider::MockProvider(std::vector<MockRule> rules, Responder fallback)
    : rules_(std::move(rules)), fallback_(std::move(fallback)), served_(rules_.size(), 0) {
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    if (rules_[i].responses.empty()) {
      throw Error(ErrorCode::kInvalidRequest, "mock rule " + describe(rules_[i]) +
                                                  " has no responses");
    }
    auto key_i = rules_[i].contains;
    std::sort(key_i.begin(), key_i.end());
    for (std::size_t j = 0; j < i; ++j) {
      auto key_j = rules_[j].contains;
      std::sort(key_j.begin(), key_j.end());
      if (key_i == key_j && rules_[i].model == rules_[j].model) {
        throw Error(ErrorCode::kAmbiguousMatcher,
                    "mock rules " + std::to_string(j) + " and " + std::to_string(i) +
                        " share the matcher " + describe(rules_[i]));
      }
    }
  }
}

std::shared_ptr<MockProvider> MockProvider::from_json(const Json& script) {
  std::vector<MockRule> rules;
  try {
    for (const auto& r : script.value("rules", Json::array())) {
      MockRule rule;
      const Json& c = r.at("contains");
      if (c.is_string()) {
        rule.contains.push_back(c.get<std::string>());
      } else {
        rule.contains = c.get<std::vector<std::string>>();
      }
      if (r.contains("model")) rule.model = r.at("model").get<std::string>();
      if (r.contains("response")) rule.responses.push_back(r.at("response").get<std::string>());
      if (r.contains("responses")) {
        for (const auto& t : r.at("responses")) rule.responses.push_back(t.get<std::string>());
      }
      rules.push_back(std::move(rule));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kSchemaViolation, std::string("mock script: ") + e.what());
  }
  Responder fallback;
  if (script.contains("default")) {
    std::string text = script.at("default").get<std::string>();
    fallback = [text](const PreparedRequest&) { return std::optional<std::string>(text); };
  }
  return std::make_shared<MockProvider>(std::move(rules), std::move(fallback));
}

ChatResponse MockProvider::send(const PreparedRequest& request) {
  std::string text = request.joined_text();
  const std::string& model = request.request->handle.model;
  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const auto& r = rules_[i];
    if (r.model && *r.model != model) continue;
    bool all = std::all_of(r.contains.begin(), r.contains.end(),
                           [&](const std::string& s) { return text.find(s) != std::string::npos; });
    if (all) hits.push_back(i);
  }
  if (hits.size() > 1) {
    std::string names;
    for (auto h : hits) names += " " + describe(rules_[h]);
    throw Error(ErrorCode::kAmbiguousMatcher, "request matches several mock rules:" + names);
  }

  ChatResponse out;
  if (hits.size() == 1) {
    std::lock_guard g(mu_);
    ++calls_;
    const auto& responses = rules_[hits[0]].responses;
    std::size_t n = served_[hits[0]]++;
    out.text = responses[std::min(n, responses.size() - 1)];
  } else {
    std::optional<std::string> reply;
    if (fallback_) reply = fallback_(request);
    if (!reply) {
      std::string preview = text.substr(0, 160);
      throw Error(ErrorCode::kUnmatchedRequest, "no mock rule matches request: " + preview);
    }
    std::lock_guard g(mu_);
    ++calls_;
    out.text = std::move(*reply);
  }
  out.usage.prompt = static_cast<std::int64_t>(text.size() / 4);
  out.usage.completion = static_cast<std::int64_t>(out.text.size() / 4);
  out.raw = {{"provider", "mock"}, {"model", model}, {"text", out.text}};
  return out;
}

std::size_t MockProvider::calls() const {
  std::lock_guard g(mu_);
  return calls_;
}

}  // namespace claimgate::llm
