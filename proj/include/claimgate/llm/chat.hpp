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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "claimgate/common/io.hpp"

namespace claimgate::llm {

struct ModelHandle {
  std::string provider;
  std::string model;
  double temperature = 0.0;
  int max_output_tokens = 4096;
  bool thinking = false;

  Json to_json() const;
  static ModelHandle from_json(const Json& j);
  std::string label() const;  // provider/model@temperature
};

enum class Role { kSystem, kUser, kAssistant };
const char* to_string(Role r);

struct ChatMessage {
  Role role = Role::kUser;
  std::string text;
  std::optional<std::filesystem::path> image;
};

struct ChatRequest {
  std::vector<ChatMessage> messages;
  ModelHandle handle;
  std::string cache_salt;

  // At most one system message, and only in first position. Throws
  // invalid-request otherwise.
  void validate() const;
};

struct TokenUsage {
  std::int64_t prompt = 0;
  std::int64_t completion = 0;
};

struct ChatResponse {
  std::string text;
  TokenUsage usage;
  double latency_ms = 0.0;
  bool cache_hit = false;
  Json raw;  // provider payload, stored verbatim in the cache
};

struct Attachment {
  std::string mime_type;
  std::string bytes;
  std::string sha256;
};

// Request with image attachments read into memory. attachments[i] belongs to
// messages[i]. Built once by the gateway so hashing and sending see the same
// bytes.
struct PreparedRequest {
  const ChatRequest* request = nullptr;
  std::vector<std::optional<Attachment>> attachments;

  static PreparedRequest prepare(const ChatRequest& request);
  std::string joined_text() const;  // every message text, newline separated
};

// Failure raised by a provider adapter. The gateway retries kTransient and
// kRateLimited with backoff; the others surface immediately.
class ProviderFailure : public std::runtime_error {
 public:
  enum class Kind { kTransient, kRateLimited, kAuth, kPermanent };

  ProviderFailure(Kind kind, int status, const std::string& message)
      : std::runtime_error(message), kind_(kind), status_(status) {}

  Kind kind() const { return kind_; }
  int status() const { return status_; }
  bool retryable() const { return kind_ == Kind::kTransient || kind_ == Kind::kRateLimited; }

  // 401/403 auth, 429 rate limit, 408/5xx or no status transient, other 4xx permanent.
  static ProviderFailure from_status(int status, const std::string& message);

 private:
  Kind kind_;
  int status_;
};

class ChatProvider {
 public:
  virtual ~ChatProvider() = default;
  // Performs one attempt. Fills text, usage and raw; throws ProviderFailure.
  virtual ChatResponse send(const PreparedRequest& request) = 0;
};

}  // namespace claimgate::llm
