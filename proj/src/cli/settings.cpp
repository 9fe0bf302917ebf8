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

#include "claimgate/cli/settings.hpp"

#include "claimgate/common/error.hpp"

namespace claimgate::cli {

namespace fs = std::filesystem;

llm::ModelHandle Settings::handle() const {
  return {provider, model, temperature, max_tokens, thinking};
}

Json Settings::to_json() const {
  auto path = [](const std::optional<fs::path>& p) { return p ? Json(p->string()) : Json(nullptr); };
  return {{"provider", provider},       {"model", model},
          {"temp", temperature},        {"max_tokens", max_tokens},
          {"thinking", thinking},       {"cache_dir", path(cache_dir)},
          {"out_dir", out_dir.string()}, {"max_inflight", max_inflight},
          {"mock_script", path(mock_script)}, {"config", path(config)}};
}

namespace {

template <typename T>
T parse_number(const std::string& raw, const std::string& what) {
  try {
    std::size_t used = 0;
    T v;
    if constexpr (std::is_same_v<T, double>) {
      v = std::stod(raw, &used);
    } else {
      long long n = std::stoll(raw, &used);
      if (n < 0) throw std::invalid_argument("negative");
      v = static_cast<T>(n);
    }
    if (used != raw.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kUsage, what + " is not a valid number: " + raw);
  }
}

bool parse_bool(const std::string& raw, const std::string& what) {
  if (raw == "1" || raw == "true" || raw == "yes" || raw == "on") return true;
  if (raw == "0" || raw == "false" || raw == "no" || raw == "off") return false;
  throw Error(ErrorCode::kUsage, what + " is not a boolean: " + raw);
}

// One setting seen through the three layers.
struct Layers {
  const llm::EnvLookup& env;
  const Json& config;
  fs::path config_dir;

  std::optional<std::string> env_value(const char* name) const {
    auto v = env(std::string("CLAIMGATE_") + name);
    if (v && v->empty()) return std::nullopt;
    return v;
  }

  const Json* config_value(const char* key) const {
    if (!config.contains(key) || config[key].is_null()) return nullptr;
    return &config[key];
  }

  std::string config_string(const Json& v, const char* key) const {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number() || v.is_boolean()) return v.dump();
    throw Error(ErrorCode::kUsage, std::string("config key ") + key + " has the wrong type");
  }

  template <typename T, typename Parse>
  void resolve(const std::optional<T>& flag, const char* env_name, const char* key, Parse parse, T& out) const {
    if (flag) {
      out = *flag;
    } else if (auto e = env_value(env_name)) {
      out = parse(*e, std::string("CLAIMGATE_") + env_name);
    } else if (const Json* c = config_value(key)) {
      out = parse(config_string(*c, key), std::string("config ") + key);
    }
  }

  void resolve_path(const std::optional<fs::path>& flag, const char* env_name, const char* key,
                    std::optional<fs::path>& out) const {
    if (flag) {
      out = *flag;
    } else if (auto e = env_value(env_name)) {
      out = fs::path(*e);
    } else if (const Json* c = config_value(key)) {
      fs::path p = config_string(*c, key);
      out = p.is_relative() ? config_dir / p : p;
    }
  }
};

}  // namespace

Settings resolve_settings(const SettingFlags& flags, const llm::EnvLookup& env) {
  Settings s;
  Json config = Json::object();
  fs::path config_dir;
  if (flags.config) {
    s.config = flags.config;
  } else if (auto e = env("CLAIMGATE_CONFIG"); e && !e->empty()) {
    s.config = fs::path(*e);
  }
  if (s.config) {
    try {
      config = Json::parse(read_file(*s.config));
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::kUsage, "config " + s.config->string() + " is not valid JSON: " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::kUsage, "cannot read config " + s.config->string() + ": " + e.what());
    }
    if (!config.is_object()) throw Error(ErrorCode::kUsage, "config must be a JSON object");
    config_dir = s.config->parent_path();
  }
  Layers layers{env, config, config_dir};
  auto text = [](const std::string& v, const std::string&) { return v; };
  layers.resolve(flags.provider, "PROVIDER", "provider", text, s.provider);
  layers.resolve(flags.model, "MODEL", "model", text, s.model);
  layers.resolve(flags.temperature, "TEMP", "temp", parse_number<double>, s.temperature);
  layers.resolve(flags.max_tokens, "MAX_TOKENS", "max_tokens", parse_number<int>, s.max_tokens);
  layers.resolve(flags.thinking, "THINKING", "thinking", parse_bool, s.thinking);
  layers.resolve(flags.max_inflight, "MAX_INFLIGHT", "max_inflight", parse_number<std::size_t>, s.max_inflight);
  layers.resolve_path(flags.cache_dir, "CACHE_DIR", "cache_dir", s.cache_dir);
  layers.resolve_path(flags.mock_script, "MOCK_SCRIPT", "mock_script", s.mock_script);
  std::optional<fs::path> out_dir;
  layers.resolve_path(flags.out_dir, "OUT_DIR", "out_dir", out_dir);
  if (out_dir) s.out_dir = *out_dir;
  if (s.max_inflight == 0) throw Error(ErrorCode::kUsage, "max_inflight must be at least 1");
  return s;
}

}  // namespace claimgate::cli
