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

#include <ostream>
#include <string>
#include <vector>

#include "claimgate/llm/http_provider.hpp"

namespace claimgate::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitPartial = 3;

const char* version();

// Subcommands: simulate, generate, review {serve, enqueue, export, stats},
// evaluate, judge, selfverify, ablate, report. `args` excludes the program
// name. Returns 0 on success, 2 on usage errors, 3 when some units failed
// (a failure report path is printed) and 1 on any other error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const llm::EnvLookup& env = llm::process_env());

}  // namespace claimgate::cli
