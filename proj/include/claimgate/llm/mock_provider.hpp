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

#pragma once

#include <cstddef>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "claimgate/llm/chat.hpp"

namespace claimgate::llm {

// A rule matches when every `contains` substring occurs in the joined message
// text and, if set, the model name is equal. Responses are replayed in order;
// the last one repeats.
struct MockRule {
  std::vector<std::string> contains;
  std::optional<std::string> model;
  std::vector<std::string> responses;
};

// Deterministic scripted provider. Two rules with identical matchers are
// rejected at construction (ambiguous-matcher); a request matching several
// rules also raises ambiguous-matcher, and a request matching none raises
// unmatched-request unless a fallback responder is installed.
class MockProvider : public ChatProvider {
 public:
  using Responder = std::function<std::optional<std::string>(const PreparedRequest&)>;

  explicit MockProvider(std::vector<MockRule> rules, Responder fallback = {});

  // {"rules": [{"contains": [...], "model": "...", "response": "..." |
  //  "responses": [...]}], "default": "..."}
  static std::shared_ptr<MockProvider> from_json(const Json& script);

  ChatResponse send(const PreparedRequest& request) override;
  std::size_t calls() const;

 private:
  std::vector<MockRule> rules_;
  Responder fallback_;
  mutable std::mutex mu_;
  std::vector<std::size_t> served_;
  std::size_t calls_ = 0;
};

}  // namespace claimgate::llm
