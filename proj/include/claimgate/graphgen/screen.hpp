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
#include <vector>

#include "claimgate/graphgen/graph.hpp"
#include "claimgate/graphgen/source.hpp"

namespace claimgate::graphgen {

// Deterministic guard for "no new entities". Entity-like claim tokens are
// those carrying digits, underscores, or capitals anywhere but the first
// letter of a sentence-initial word. Each must occur (case-folded) in the
// reference text; bare numbers must match a number in the reference exactly.
std::vector<std::string> unknown_entities(const std::string& claim, const std::string& reference);

// Text the entity screen checks against: evidence, source claim and graph.
std::string screen_reference(const SourceRecord& source, const ReasoningGraph& graph);

// Single evidence sentences, table rows and observation texts.
std::vector<std::string> evidence_units(const SourceRecord& source, const ReasoningGraph& graph);

// Guard for "not single-step falsifiable": returns the first unit whose
// content words cover every content word of the claim, i.e. the claim can be
// checked against that unit alone.
std::optional<std::string> single_step_cover(const std::string& claim,
                                             const std::vector<std::string>& units);

}  // namespace claimgate::graphgen
