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

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>

#include "claimgate/common/error.hpp"

namespace testing_support {

inline std::filesystem::path fixture_dir() {
  if (const char* env = std::getenv("CLAIMGATE_FIXTURES")) return env;
  return CLAIMGATE_FIXTURE_DIR;
}

inline std::filesystem::path fixture(const std::string& rel) { return fixture_dir() / rel; }

// Runs f and returns the claimgate error code it raised, or nullopt.
template <typename F>
std::optional<claimgate::ErrorCode> error_code_of(F&& f) {
  try {
    f();
  } catch (const claimgate::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace testing_support
