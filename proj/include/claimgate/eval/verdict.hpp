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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "claimgate/eval/dataset.hpp"

namespace claimgate::eval {

enum class Verdict { kFeasible, kInfeasible, kUnparseable };
const char* to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);
std::optional<Label> as_label(Verdict v);

struct ParsedVerdict {
  Verdict verdict = Verdict::kUnparseable;
  std::vector<std::string> subclaims;  // bullets under a "Subclaims" heading
  std::string reason;                  // text after "Reason:", if present
};

// Finds the last "Verdict:" label in the response (case-insensitive, markdown
// emphasis and heading marks ignored). The last FEASIBLE/INFEASIBLE token
// after it on the same line decides; a bare "Verdict:" defers to the next
// non-empty line. "not feasible" reads as infeasible. No verdict line gives
// kUnparseable.
ParsedVerdict parse_verdict(std::string_view response);

}  // namespace claimgate::eval
