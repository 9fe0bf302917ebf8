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
#include <filesystem>
#include <optional>
#include <string>

#include "claimgate/llm/chat.hpp"
#include "claimgate/llm/http_provider.hpp"

namespace claimgate::cli {

// Values given on the command line; unset fields fall through to the
// environment (CLAIMGATE_<NAME>) and then to the config file.
struct SettingFlags {
  std::optional<std::string> provider;
  std::optional<std::string> model;
  std::optional<double> temperature;
  std::optional<int> max_tokens;
  std::optional<bool> thinking;
  std::optional<std::filesystem::path> cache_dir;
  std::optional<std::filesystem::path> out_dir;
  std::optional<std::size_t> max_inflight;
  std::optional<std::filesystem::path> mock_script;
  std::optional<std::filesystem::path> config;
};

struct Settings {
  std::string provider = "mock";
  std::string model;
  double temperature = 0.0;
  int max_tokens = 4096;
  bool thinking = false;
  std::optional<std::filesystem::path> cache_dir;
  std::filesystem::path out_dir = "claimgate-out";
  std::size_t max_inflight = 4;
  std::optional<std::filesystem::path> mock_script;
  std::optional<std::filesystem::path> config;

  llm::ModelHandle handle() const;
  Json to_json() const;
};

// Precedence: flags > env > config file > defaults. Relative paths in the
// config file resolve against the file's directory. The config file comes
// from --config or CLAIMGATE_CONFIG. Errors: usage for unreadable config or
// malformed numbers.
Settings resolve_settings(const SettingFlags& flags, const llm::EnvLookup& env);

}  // namespace claimgate::cli
