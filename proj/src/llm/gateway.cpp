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

#include "claimgate/llm/gateway.hpp"

#include <cmath>
#include <thread>

#include "claimgate/common/error.hpp"

namespace claimgate::llm {

namespace fs = std::filesystem;

struct Gateway::Slot {
  std::shared_ptr<ChatProvider> provider;
  std::size_t limit = 1;
  std::mutex mu;
  std::condition_variable cv;
  std::size_t inflight = 0;
  std::size_t max_seen = 0;
};

struct Gateway::KeyLock {
  std::mutex mu;
  std::size_t users = 0;  // guarded by keys_mu_
};

namespace {

class InflightGuard {
 public:
  InflightGuard(std::mutex& mu, std::condition_variable& cv, std::size_t& inflight,
                std::size_t limit, std::size_t& max_seen)
      : mu_(mu), cv_(cv), inflight_(inflight) {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return inflight_ < limit; });
    ++inflight_;
    max_seen = std::max(max_seen, inflight_);
  }
  ~InflightGuard() {
    {
      std::lock_guard lock(mu_);
      --inflight_;
    }
    cv_.notify_one();
  }
  InflightGuard(const InflightGuard&) = delete;
  InflightGuard& operator=(const InflightGuard&) = delete;

 private:
  std::mutex& mu_;
  std::condition_variable& cv_;
  std::size_t& inflight_;
};

ErrorCode code_for(const ProviderFailure& f) {
  switch (f.kind()) {
    case ProviderFailure::Kind::kAuth: return ErrorCode::kProviderAuth;
    case ProviderFailure::Kind::kRateLimited: return ErrorCode::kProviderRateLimited;
    default: return ErrorCode::kProviderError;
  }
}

Json canonical_object(const PreparedRequest& prepared) {
  const ChatRequest& r = *prepared.request;
  Json messages = Json::array();
  for (std::size_t i = 0; i < r.messages.size(); ++i) {
    Json m = {{"role", to_string(r.messages[i].role)}, {"text", r.messages[i].text}};
    if (prepared.attachments[i]) m["image_sha256"] = prepared.attachments[i]->sha256;
    messages.push_back(std::move(m));
  }
  return {{"provider", r.handle.provider},
          {"model", r.handle.model},
          {"temperature", r.handle.temperature},
          {"thinking", r.handle.thinking},
          {"messages", std::move(messages)},
          {"salt", r.cache_salt}};
}

}  // namespace

std::string canonical_request_json(const PreparedRequest& prepared) {
  return canonical_object(prepared).dump();
}

Gateway::Gateway(GatewayOptions options) : options_(std::move(options)) {
  if (!options_.sleep) {
    options_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
  if (options_.max_inflight == 0) options_.max_inflight = 1;
}

Gateway::~Gateway() = default;

void Gateway::register_provider(const std::string& key, std::shared_ptr<ChatProvider> provider,
                                std::optional<std::size_t> max_inflight) {
  auto s = std::make_unique<Slot>();
  s->provider = std::move(provider);
  s->limit = std::max<std::size_t>(1, max_inflight.value_or(options_.max_inflight));
  std::lock_guard lock(registry_mu_);
  slots_[key] = std::move(s);
}

bool Gateway::has_provider(const std::string& key) const {
  std::lock_guard lock(registry_mu_);
  return slots_.count(key) > 0;
}

Gateway::Slot& Gateway::slot(const std::string& key) const {
  std::lock_guard lock(registry_mu_);
  auto it = slots_.find(key);
  if (it == slots_.end()) {
    throw Error(ErrorCode::kUnknownProvider, "no provider registered under '" + key + "'");
  }
  return *it->second;
}

std::string Gateway::cache_key(const ChatRequest& request) const {
  return sha256_hex(canonical_request_json(PreparedRequest::prepare(request)));
}

std::optional<fs::path> Gateway::cache_path(const std::string& key) const {
  if (!options_.cache_dir) return std::nullopt;
  return *options_.cache_dir / key.substr(0, 2) / (key + ".json");
}

std::optional<ChatResponse> Gateway::cache_read(const std::string& key) const {
  auto path = cache_path(key);
  if (!path || !fs::exists(*path)) return std::nullopt;
  try {
    Json j = Json::parse(read_file(*path));
    const Json& r = j.at("response");
    ChatResponse out;
    out.text = r.at("text").get<std::string>();
    out.usage.prompt = r.at("usage").value("prompt", std::int64_t{0});
    out.usage.completion = r.at("usage").value("completion", std::int64_t{0});
    out.raw = r.value("raw", Json());
    out.cache_hit = true;
    return out;
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable entry is treated as a miss and rewritten
  }
}

void Gateway::cache_write(const std::string& key, const ChatRequest& request,
                          const ChatResponse& response) const {
  auto path = cache_path(key);
  if (!path) return;
  Json entry = {{"key", key},
                {"handle", request.handle.to_json()},
                {"created_at", utc_timestamp()},
                {"response",
                 {{"text", response.text},
                  {"usage", {{"prompt", response.usage.prompt},
                             {"completion", response.usage.completion}}},
                  {"raw", response.raw}}}};
  write_file_atomic(*path, entry.dump(2));
}

std::shared_ptr<Gateway::KeyLock> Gateway::lock_key(const std::string& key) {
  std::shared_ptr<KeyLock> lock;
  {
    std::lock_guard g(keys_mu_);
    auto& entry = key_locks_[key];
    if (!entry) entry = std::make_shared<KeyLock>();
    ++entry->users;
    lock = entry;
  }
  lock->mu.lock();
  return lock;
}

void Gateway::unlock_key(const std::string& key, const std::shared_ptr<KeyLock>& lock) {
  lock->mu.unlock();
  std::lock_guard g(keys_mu_);
  if (--lock->users == 0) key_locks_.erase(key);
}

ChatResponse Gateway::call_with_retries(Slot& s, const PreparedRequest& prepared, int& attempts) {
  auto backoff = options_.initial_backoff;
  for (attempts = 1;; ++attempts) {
    {
      std::lock_guard g(stats_mu_);
      ++stats_.provider_calls;
    }
    try {
      InflightGuard guard(s.mu, s.cv, s.inflight, s.limit, s.max_seen);
      return s.provider->send(prepared);
    } catch (const ProviderFailure& f) {
      if (!f.retryable() || attempts > options_.max_retries) {
        std::string what = f.what();
        if (f.retryable()) what += " (after " + std::to_string(attempts) + " attempts)";
        throw Error(code_for(f), what);
      }
    }
    {
      std::lock_guard g(stats_mu_);
      ++stats_.retries;
    }
    options_.sleep(backoff);
    backoff = std::chrono::milliseconds(
        static_cast<std::int64_t>(std::llround(backoff.count() * options_.backoff_multiplier)));
  }
}

ChatResponse Gateway::complete(const ChatRequest& request) {
  auto start = std::chrono::steady_clock::now();
  PreparedRequest prepared = PreparedRequest::prepare(request);
  Slot& s = slot(request.handle.provider);
  std::string key = sha256_hex(canonical_request_json(prepared));
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  };
  Json log = {{"ts", utc_timestamp()},
              {"provider", request.handle.provider},
              {"model", request.handle.model},
              {"temperature", request.handle.temperature},
              {"key", key}};
  {
    std::lock_guard g(stats_mu_);
    ++stats_.requests;
  }

  auto key_lock = lock_key(key);
  struct Unlock {
    Gateway* g;
    const std::string& key;
    std::shared_ptr<KeyLock> lock;
    ~Unlock() { g->unlock_key(key, lock); }
  } unlock{this, key, key_lock};

  if (auto hit = cache_read(key)) {
    hit->latency_ms = elapsed_ms();
    {
      std::lock_guard g(stats_mu_);
      ++stats_.cache_hits;
    }
    log["cache_hit"] = true;
    log["attempts"] = 0;
    log["latency_ms"] = hit->latency_ms;
    log["status"] = "ok";
    audit(log);
    return *hit;
  }

  int attempts = 0;
  try {
    ChatResponse response = call_with_retries(s, prepared, attempts);
    response.cache_hit = false;
    response.latency_ms = elapsed_ms();
    cache_write(key, request, response);
    log["cache_hit"] = false;
    log["attempts"] = attempts;
    log["latency_ms"] = response.latency_ms;
    log["status"] = "ok";
    log["usage"] = {{"prompt", response.usage.prompt},
                    {"completion", response.usage.completion}};
    audit(log);
    return response;
  } catch (const Error& e) {
    log["cache_hit"] = false;
    log["attempts"] = attempts;
    log["latency_ms"] = elapsed_ms();
    log["status"] = "error";
    log["error"] = std::string(e.code_name());
    log["message"] = e.what();
    audit(log);
    throw;
  }
}

void Gateway::audit(const Json& line) {
  if (!options_.audit_log) return;
  std::lock_guard g(audit_mu_);
  append_line(*options_.audit_log, line.dump());
}

std::size_t Gateway::max_observed_inflight(const std::string& key) const {
  Slot& s = slot(key);
  std::lock_guard g(s.mu);
  return s.max_seen;
}

GatewayStats Gateway::stats() const {
  std::lock_guard g(stats_mu_);
  return stats_;
}

}  // namespace claimgate::llm
