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

#include <array>
#include <string>

#include "claimgate/eval/dataset.hpp"
#include "claimgate/llm/chat.hpp"

namespace claimgate::eval {

enum class PromptCondition { kBaseline, kOwa, kCwa, kDcpOwa, kDcpCwa };
// Permissive to strict; the order ROC points are reported in.
inline constexpr std::array<PromptCondition, 5> kRocOrder = {
    PromptCondition::kDcpOwa, PromptCondition::kOwa, PromptCondition::kBaseline,
    PromptCondition::kCwa, PromptCondition::kDcpCwa};
const char* to_string(PromptCondition c);  // baseline, owa, cwa, dcp-owa, dcp-cwa
PromptCondition prompt_condition_from_string(const std::string& s);
bool is_decomposition(PromptCondition c);

enum class GraphCondition { kNoGraph, kGraphO, kGraphOC, kGraphAll };
const char* to_string(GraphCondition c);  // none, graph-o, graph-oc, graph-all
GraphCondition graph_condition_from_string(const std::string& s);

struct EvalCondition {
  PromptCondition prompt = PromptCondition::kBaseline;
  GraphCondition graph = GraphCondition::kNoGraph;

  std::string label() const;  // "cwa", "baseline+graph-oc"
  Json to_json() const;
  static EvalCondition from_json(const Json& j);
  friend bool operator==(const EvalCondition&, const EvalCondition&) = default;
};

// Evaluation prompt for one record. Chart evidence travels as an image
// attachment; everything else is inlined.
llm::ChatRequest build_prompt(const DatasetRecord& record, PromptCondition condition,
                              const llm::ModelHandle& handle);

// Baseline instruction plus the graph layers the condition exposes.
// Errors: missing-graph for any condition other than kNoGraph when the
// record carries no graph.
llm::ChatRequest build_graph_condition_prompt(const DatasetRecord& record, GraphCondition condition,
                                              const llm::ModelHandle& handle);

llm::ChatRequest build_request(const DatasetRecord& record, const EvalCondition& condition,
                               const llm::ModelHandle& handle);

}  // namespace claimgate::eval
