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

#include <chrono>
#include <functional>
#include <memory>
#include <string>

#include "claimgate/llm/chat.hpp"

namespace claimgate::llm {

struct HttpProviderConfig {
  std::string base_url;  // e.g. https://api.openai.com/v1
  std::string api_key;   // sent as a bearer token when non-empty
  std::chrono::seconds timeout{300};
  // Sends chat_template_kwargs.enable_thinking (vLLM / SGLang style servers).
  bool thinking_kwarg = false;
};

// Client for OpenAI-compatible /chat/completions endpoints.
class HttpChatProvider : public ChatProvider {
 public:
  explicit HttpChatProvider(HttpProviderConfig config);
  ChatResponse send(const PreparedRequest& request) override;

  // Request body for `request`; exposed for tests.
  Json build_body(const PreparedRequest& request) const;

 private:
  HttpProviderConfig config_;
  std::string scheme_host_port_;
  std::string path_prefix_;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;
EnvLookup process_env();

// Built-in provider keys: openai, gemini, anthropic, local. The key is read
// from CLAIMGATE_<KEY>_API_KEY and the endpoint may be overridden with
// CLAIMGATE_<KEY>_BASE_URL. Unknown keys raise unknown-provider; a missing API
// key for a hosted provider raises provider-auth.
std::shared_ptr<ChatProvider> make_builtin_provider(const std::string& key,
                                                    const EnvLookup& env = process_env());

}  // namespace claimgate::llm
