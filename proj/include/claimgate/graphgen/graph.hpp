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

#include <string>
#include <vector>

#include "claimgate/common/io.hpp"

namespace claimgate::graphgen {

enum class Layer { kObservation, kContext, kInterpretation };

const char* to_string(Layer l);
Layer layer_from_string(const std::string& s);

struct GraphNode {
  std::string id;  // O1..O5, C1..C3, I1..I3
  Layer layer = Layer::kObservation;
  std::string text;
  std::vector<std::string> cites;

  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

struct ReasoningGraph {
  std::string source_id;
  std::vector<GraphNode> nodes;

  const GraphNode* find(const std::string& id) const;
  GraphNode* find(const std::string& id);
  std::vector<const GraphNode*> layer(Layer l) const;

  // {"source_id", "nodes": [{"id", "layer", "text", "cites"}]}
  Json to_json() const;
  static ReasoningGraph from_json(const Json& j);

  friend bool operator==(const ReasoningGraph&, const ReasoningGraph&) = default;
};

// Generation demands exactly 5/3/3 nodes. Ingestion accepts 5/>=2/>=2 and
// reports the shortfall as warnings, which lets exemplar graphs with two
// interpretation nodes load.
enum class Strictness { kGeneration, kIngestion };

struct GraphIssue {
  std::string node_id;  // empty for graph-level rules
  std::string rule;
  std::string detail;

  friend bool operator==(const GraphIssue&, const GraphIssue&) = default;
};

struct GraphValidation {
  std::vector<GraphIssue> violations;
  std::vector<GraphIssue> warnings;
  bool ok() const { return violations.empty(); }
  bool has(const std::string& rule) const;
};

// Rules: observation-count, context-count, interpretation-count, bad-id,
// duplicate-id, empty-text, observation-cites, context-citations,
// interpretation-citations, layer-skip, layer-order, unknown-citation, cycle.
GraphValidation validate_graph(const ReasoningGraph& graph,
                               Strictness strictness = Strictness::kGeneration);

// "O1: text" lines grouped by layer, with citations for C and I nodes.
std::string render_graph(const ReasoningGraph& graph);

}  // namespace claimgate::graphgen
