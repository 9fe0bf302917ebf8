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
#include <condition_variable>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "claimgate/llm/chat.hpp"

namespace claimgate::llm {

struct GatewayOptions {
  std::optional<std::filesystem::path> cache_dir;  // no caching when unset
  std::optional<std::filesystem::path> audit_log;  // JSONL, one line per complete()
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{500};
  double backoff_multiplier = 2.0;
  std::size_t max_inflight = 4;  // per provider, unless overridden at registration
  std::function<void(std::chrono::milliseconds)> sleep;  // defaults to sleep_for
};

struct GatewayStats {
  std::size_t requests = 0;
  std::size_t cache_hits = 0;
  std::size_t provider_calls = 0;  // attempts, including retries
  std::size_t retries = 0;
};

// Thread-safe front door for all model calls: provider registry, per-provider
// in-flight bound, retries with exponential backoff, content-addressed
// response cache, and an audit log.
class Gateway {
 public:
  explicit Gateway(GatewayOptions options = {});
  ~Gateway();

  void register_provider(const std::string& key, std::shared_ptr<ChatProvider> provider,
                         std::optional<std::size_t> max_inflight = std::nullopt);
  bool has_provider(const std::string& key) const;

  ChatResponse complete(const ChatRequest& request);

  // Hex SHA-256 over the canonical JSON of provider, model, temperature,
  // thinking flag, messages (attachment bytes by hash) and salt.
  std::string cache_key(const ChatRequest& request) const;
  std::optional<std::filesystem::path> cache_path(const std::string& key) const;

  // Largest number of simultaneous provider calls observed for `key`.
  std::size_t max_observed_inflight(const std::string& key) const;
  GatewayStats stats() const;

 private:
  struct Slot;
  struct KeyLock;

  Slot& slot(const std::string& key) const;
  std::optional<ChatResponse> cache_read(const std::string& key) const;
  void cache_write(const std::string& key, const ChatRequest& request,
                   const ChatResponse& response) const;
  ChatResponse call_with_retries(Slot& s, const PreparedRequest& prepared, int& attempts);
  void audit(const Json& line);
  std::shared_ptr<KeyLock> lock_key(const std::string& key);
  void unlock_key(const std::string& key, const std::shared_ptr<KeyLock>& lock);

  GatewayOptions options_;
  mutable std::mutex registry_mu_;
  std::map<std::string, std::unique_ptr<Slot>> slots_;
  std::mutex keys_mu_;
  std::unordered_map<std::string, std::shared_ptr<KeyLock>> key_locks_;
  std::mutex audit_mu_;
  mutable std::mutex stats_mu_;
  GatewayStats stats_;
};

std::string canonical_request_json(const PreparedRequest& prepared);

}  // namespace claimgate::llm
