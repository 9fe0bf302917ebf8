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

#include "claimgate/graphgen/graph.hpp"
#include "claimgate/graphgen/source.hpp"

namespace claimgate::graphgen {

enum class CorruptionOp {
  kScopeSwap,
  kOvergeneralization,
  kQualifierOmission,
  kPopulationShift,
  kConditionalBoundaryFlip,
  kCrossAttributionSwap,
  kLocalToGlobalOverreach,
  kAggregationMisuse,
};

inline constexpr CorruptionOp kAllCorruptionOps[] = {
    CorruptionOp::kScopeSwap,          CorruptionOp::kOvergeneralization,
    CorruptionOp::kQualifierOmission,  CorruptionOp::kPopulationShift,
    CorruptionOp::kConditionalBoundaryFlip, CorruptionOp::kCrossAttributionSwap,
    CorruptionOp::kLocalToGlobalOverreach,  CorruptionOp::kAggregationMisuse,
};

const char* to_string(CorruptionOp op);  // "ScopeSwap", ...
// Accepts the canonical name, snake_case, or space-separated words.
std::optional<CorruptionOp> corruption_op_from_string(const std::string& s);

enum class RephraseStyle { kSurfaceForm, kCrossModel };
const char* to_string(RephraseStyle s);
RephraseStyle rephrase_style_from_string(const std::string& s);

// Graph construction prompt with the domain branch chosen from the source,
// followed by the source material and the JSON output contract.
std::string graph_prompt(const SourceRecord& source);

// Infeasible-claim prompt over a built graph. Optional target node and
// operation are passed as hints.
std::string corruption_prompt(const SourceRecord& source, const ReasoningGraph& graph,
                              const std::optional<std::string>& target,
                              const std::optional<CorruptionOp>& op);

// Independent five-condition check of a finished candidate.
std::string self_check_prompt(const SourceRecord& source, const ReasoningGraph& graph,
                              const std::string& claim);

std::string rephrase_prompt(const std::string& claim, RephraseStyle style);

// Hash over every template, recorded in pool manifests.
std::string prompt_hash();

}  // namespace claimgate::graphgen
