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

#include "claimgate/graphgen/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <regex>
#include <set>

#include "claimgate/common/error.hpp"

namespace claimgate::graphgen {

const char* to_string(Layer l) {
  switch (l) {
    case Layer::kObservation: return "observation";
    case Layer::kContext: return "context";
    case Layer::kInterpretation: return "interpretation";
  }
  return "observation";
}

Layer layer_from_string(const std::string& s) {
  if (s == "observation") return Layer::kObservation;
  if (s == "context") return Layer::kContext;
  if (s == "interpretation") return Layer::kInterpretation;
  throw Error(ErrorCode::kSchemaViolation, "unknown graph layer '" + s + "'");
}

namespace {

char prefix(Layer l) {
  switch (l) {
    case Layer::kObservation: return 'O';
    case Layer::kContext: return 'C';
    case Layer::kInterpretation: return 'I';
  }
  return 'O';
}

std::optional<Layer> layer_of_id(const std::string& id) {
  if (id.empty()) return std::nullopt;
  switch (id[0]) {
    case 'O': return Layer::kObservation;
    case 'C': return Layer::kContext;
    case 'I': return Layer::kInterpretation;
    default: return std::nullopt;
  }
}

}  // namespace

const GraphNode* ReasoningGraph::find(const std::string& id) const {
  for (const auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

GraphNode* ReasoningGraph::find(const std::string& id) {
  for (auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

std::vector<const GraphNode*> ReasoningGraph::layer(Layer l) const {
  std::vector<const GraphNode*> out;
  for (const auto& n : nodes)
    if (n.layer == l) out.push_back(&n);
  return out;
}

Json ReasoningGraph::to_json() const {
  Json ns = Json::array();
  for (const auto& n : nodes) {
    ns.push_back({{"id", n.id}, {"layer", to_string(n.layer)}, {"text", n.text}, {"cites", n.cites}});
  }
  return {{"source_id", source_id}, {"nodes", std::move(ns)}};
}

ReasoningGraph ReasoningGraph::from_json(const Json& j) {
  ReasoningGraph g;
  try {
    g.source_id = j.value("source_id", "");
    for (const auto& n : j.at("nodes")) {
      GraphNode node;
      node.id = n.at("id").get<std::string>();
      if (n.contains("layer")) {
        node.layer = layer_from_string(n.at("layer").get<std::string>());
      } else if (auto l = layer_of_id(node.id)) {
        node.layer = *l;
      } else {
        throw Error(ErrorCode::kSchemaViolation, "node '" + node.id + "' has no layer");
      }
      node.text = n.at("text").get<std::string>();
      node.cites = n.value("cites", std::vector<std::string>{});
      g.nodes.push_back(std::move(node));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kSchemaViolation, std::string("graph: ") + e.what());
  }
  return g;
}

bool GraphValidation::has(const std::string& rule) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const GraphIssue& i) { return i.rule == rule; });
}

GraphValidation validate_graph(const ReasoningGraph& g, Strictness strictness) {
  GraphValidation out;
  auto violate = [&](std::string id, std::string rule, std::string detail) {
    out.violations.push_back({std::move(id), std::move(rule), std::move(detail)});
  };

  static const std::regex kId("^[OCI][1-9][0-9]*$");
  std::map<std::string, const GraphNode*> by_id;
  for (const auto& n : g.nodes) {
    if (!std::regex_match(n.id, kId) || n.id[0] != prefix(n.layer)) {
      violate(n.id, "bad-id", "id does not match its " + std::string(to_string(n.layer)) + " layer");
    }
    if (n.layer == Layer::kObservation && std::regex_match(n.id, kId) && std::stoi(n.id.substr(1)) > 5) {
      violate(n.id, "bad-id", "observation ids run O1..O5");
    }
    if (!by_id.emplace(n.id, &n).second) violate(n.id, "duplicate-id", "id appears more than once");
    if (n.text.find_first_not_of(" \t\r\n") == std::string::npos) {
      violate(n.id, "empty-text", "node text is empty");
    }
  }

  auto count = [&](Layer l) { return g.layer(l).size(); };
  if (count(Layer::kObservation) != 5) {
    violate("", "observation-count",
            "expected 5 observation nodes, found " + std::to_string(count(Layer::kObservation)));
  }
  auto check_count = [&](Layer l, const char* rule) {
    std::size_t n = count(l);
    std::string found = "found " + std::to_string(n) + " " + to_string(l) + " nodes";
    if (strictness == Strictness::kGeneration) {
      if (n != 3) violate("", rule, "expected 3, " + found);
    } else if (n < 2) {
      violate("", rule, "expected at least 2, " + found);
    } else if (n != 3) {
      out.warnings.push_back({"", rule, "generation expects 3, " + found});
    }
  };
  check_count(Layer::kContext, "context-count");
  check_count(Layer::kInterpretation, "interpretation-count");

  for (const auto& n : g.nodes) {
    std::set<std::string> cited_below;
    for (const auto& c : n.cites) {
      auto it = by_id.find(c);
      if (it == by_id.end()) {
        violate(n.id, "unknown-citation", "cites missing node " + c);
        continue;
      }
      Layer target = it->second->layer;
      if (n.layer == Layer::kObservation) continue;  // reported once below
      if (n.layer == Layer::kInterpretation && target == Layer::kObservation) {
        violate(n.id, "layer-skip", "interpretation cites observation " + c);
      } else if (static_cast<int>(target) >= static_cast<int>(n.layer)) {
        violate(n.id, "layer-order", "cites " + c + " from the same or a later layer");
      } else {
        cited_below.insert(c);
      }
    }
    if (n.layer == Layer::kObservation && !n.cites.empty()) {
      violate(n.id, "observation-cites", "observation nodes cite nothing");
    }
    if (n.layer == Layer::kContext && cited_below.size() < 2) {
      violate(n.id, "context-citations", "context nodes cite at least 2 observations");
    }
    if (n.layer == Layer::kInterpretation && cited_below.size() < 2) {
      violate(n.id, "interpretation-citations", "interpretation nodes cite at least 2 contexts");
    }
  }

  // Cycle detection over resolvable citations.
  std::map<std::string, int> state;  // 0 new, 1 on stack, 2 done
  std::set<std::string> reported;
  std::function<void(const GraphNode&)> dfs = [&](const GraphNode& n) {
    state[n.id] = 1;
    for (const auto& c : n.cites) {
      auto it = by_id.find(c);
      if (it == by_id.end()) continue;
      int s = state[c];
      if (s == 1) {
        if (reported.insert(c).second) violate(c, "cycle", "citation cycle through " + c);
      } else if (s == 0) {
        dfs(*it->second);
      }
    }
    state[n.id] = 2;
  };
  for (const auto& [id, node] : by_id) {
    if (state[id] == 0) dfs(*node);
  }
  return out;
}

std::string render_graph(const ReasoningGraph& g) {
  std::string out;
  for (Layer l : {Layer::kObservation, Layer::kContext, Layer::kInterpretation}) {
    for (const auto* n : g.layer(l)) {
      out += n->id + ": " + n->text;
      if (!n->cites.empty()) {
        out += " [cites ";
        for (std::size_t i = 0; i < n->cites.size(); ++i) out += (i ? ", " : "") + n->cites[i];
        out += "]";
      }
      out += "\n";
    }
  }
  return out;
}

}  // namespace claimgate::graphgen
