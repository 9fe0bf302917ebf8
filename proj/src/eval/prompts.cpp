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

#include "claimgate/eval/prompts.hpp"

#include "claimgate/common/error.hpp"

namespace claimgate::eval {

namespace {

using graphgen::Domain;
using graphgen::Layer;

constexpr const char* kHeader =
    "Determine whether a claim is FEASIBLE or INFEASIBLE given evidence.\n"
    "\n"
    "You are given:\n";

const char* given_line(Domain d) {
  switch (d) {
    case Domain::kNli4ct: return "- clinical: full trial + target excerpt\n";
    case Domain::kScitab: return "- table: table context\n";
    case Domain::kSciver: return "- chart: image (+ optional context)\n";
  }
  return "";
}

constexpr const char* kBaseline = "Use the evidence to decide whether the claim is supported.\n";

constexpr const char* kOwa =
    "You are under open-world assumption. Use the evidence to decide whether the claim is "
    "supported. Do not reject a claim based on missing evidence alone.\n";

constexpr const char* kCwa =
    "You are under closed-world assumption.\n"
    "- FEASIBLE only if all parts of the claim are explicitly supported.\n"
    "- INFEASIBLE if any part is unsupported or contradicted.\n"
    "Absence of supporting evidence counts as INFEASIBLE.\n";

constexpr const char* kDcpOwa =
    "You are under open-world assumption with decomposition.\n"
    "STEP 1 --- DECOMPOSE\n"
    "Break the claim into minimal subclaims required for it to hold.\n"
    "STEP 2 --- CHECK CONTRADICTION\n"
    "For each subclaim:\n"
    "- mark INFEASIBLE only if explicitly contradicted\n"
    "- absence of evidence does not invalidate it\n"
    "STEP 3 --- VERDICT\n"
    "- FEASIBLE: no subclaim is contradicted\n"
    "- INFEASIBLE: at least one subclaim is contradicted\n";

constexpr const char* kDcpCwa =
    "You are under closed-world assumption with decomposition.\n"
    "STEP 1 --- DECOMPOSE\n"
    "Break the claim into minimal subclaims required for it to hold.\n"
    "STEP 2 --- CHECK SUPPORT\n"
    "For each subclaim:\n"
    "- it must be fully supported by the evidence\n"
    "- unsupported or contradicted subclaims fail\n"
    "STEP 3 --- VERDICT\n"
    "- FEASIBLE: all subclaims are supported\n"
    "- INFEASIBLE: any subclaim is not supported\n";

const char* instruction(PromptCondition c) {
  switch (c) {
    case PromptCondition::kBaseline: return kBaseline;
    case PromptCondition::kOwa: return kOwa;
    case PromptCondition::kCwa: return kCwa;
    case PromptCondition::kDcpOwa: return kDcpOwa;
    case PromptCondition::kDcpCwa: return kDcpCwa;
  }
  return kBaseline;
}

std::string output_format(PromptCondition c) {
  std::string out = "Output format\n";
  if (is_decomposition(c)) out += "- Subclaims: list\n";
  out += "- Reason: brief explanation grounded in evidence\n";
  out += "- Verdict: FEASIBLE or INFEASIBLE\n";
  return out;
}

std::string evidence_block(const DatasetRecord& r) {
  std::string out;
  if (const auto* c = std::get_if<graphgen::ClinicalEvidence>(&r.evidence)) {
    if (!c->full_document.empty()) out += "Full trial:\n" + c->full_document + "\n\n";
    out += "Target excerpt:\n" + c->excerpt + "\n";
  } else if (std::holds_alternative<graphgen::TableEvidence>(r.evidence)) {
    out += "Table:\n" + graphgen::evidence_text(r.evidence) + "\n";
  } else {
    const auto& ch = std::get<graphgen::ChartEvidence>(r.evidence);
    out += "Chart: see the attached image.\n";
    if (!ch.caption.empty()) out += "Context: " + ch.caption + "\n";
  }
  return out;
}

std::string layer_block(const graphgen::ReasoningGraph& g, Layer layer, const char* title) {
  std::string out = std::string(title) + ":\n";
  for (const auto* n : g.layer(layer)) out += n->id + ": " + n->text + "\n";
  return out;
}

llm::ChatRequest make_request(const DatasetRecord& record, const std::string& text,
                              const llm::ModelHandle& handle) {
  llm::ChatRequest req;
  req.handle = handle;
  llm::ChatMessage m{llm::Role::kUser, text, std::nullopt};
  if (auto image = graphgen::evidence_image(record.evidence)) m.image = *image;
  req.messages.push_back(std::move(m));
  return req;
}

std::string prompt_text(const DatasetRecord& record, PromptCondition condition,
                        const std::string& extra_evidence) {
  std::string t = kHeader;
  t += given_line(record.domain);
  t += "- claim\n\n";
  t += instruction(condition);
  t += "\n" + output_format(condition);
  t += "\nEvidence:\n" + evidence_block(record);
  t += "\nClaim: " + record.claim + "\n";
  // Graph layers go last so each graph condition's text extends the previous one.
  return t + extra_evidence;
}

}  // namespace

const char* to_string(PromptCondition c) {
  switch (c) {
    case PromptCondition::kBaseline: return "baseline";
    case PromptCondition::kOwa: return "owa";
    case PromptCondition::kCwa: return "cwa";
    case PromptCondition::kDcpOwa: return "dcp-owa";
    case PromptCondition::kDcpCwa: return "dcp-cwa";
  }
  return "baseline";
}

PromptCondition prompt_condition_from_string(const std::string& s) {
  for (auto c : kRocOrder)
    if (s == to_string(c)) return c;
  throw Error(ErrorCode::kUsage,
              "prompt condition must be one of baseline, owa, cwa, dcp-owa, dcp-cwa; got '" + s + "'");
}

bool is_decomposition(PromptCondition c) {
  return c == PromptCondition::kDcpOwa || c == PromptCondition::kDcpCwa;
}

const char* to_string(GraphCondition c) {
  switch (c) {
    case GraphCondition::kNoGraph: return "none";
    case GraphCondition::kGraphO: return "graph-o";
    case GraphCondition::kGraphOC: return "graph-oc";
    case GraphCondition::kGraphAll: return "graph-all";
  }
  return "none";
}

GraphCondition graph_condition_from_string(const std::string& s) {
  for (auto c : {GraphCondition::kNoGraph, GraphCondition::kGraphO, GraphCondition::kGraphOC,
                 GraphCondition::kGraphAll}) {
    if (s == to_string(c)) return c;
  }
  throw Error(ErrorCode::kUsage,
              "graph condition must be one of none, graph-o, graph-oc, graph-all; got '" + s + "'");
}

std::string EvalCondition::label() const {
  std::string out = to_string(prompt);
  if (graph != GraphCondition::kNoGraph) out += std::string("+") + to_string(graph);
  return out;
}

Json EvalCondition::to_json() const {
  return {{"prompt", to_string(prompt)}, {"graph", to_string(graph)}};
}

EvalCondition EvalCondition::from_json(const Json& j) {
  return {prompt_condition_from_string(j.value("prompt", "baseline")),
          graph_condition_from_string(j.value("graph", "none"))};
}

llm::ChatRequest build_prompt(const DatasetRecord& record, PromptCondition condition,
                              const llm::ModelHandle& handle) {
  return make_request(record, prompt_text(record, condition, ""), handle);
}

llm::ChatRequest build_graph_condition_prompt(const DatasetRecord& record, GraphCondition condition,
                                              const llm::ModelHandle& handle) {
  if (condition == GraphCondition::kNoGraph) {
    return build_prompt(record, PromptCondition::kBaseline, handle);
  }
  if (!record.graph) {
    throw Error(ErrorCode::kMissingGraph, "record " + record.id + " has no reasoning graph for " +
                                              to_string(condition));
  }
  std::string extra = "\nRelevant evidence pieces:\n";
  extra += layer_block(*record.graph, Layer::kObservation, "Observations");
  if (condition == GraphCondition::kGraphOC || condition == GraphCondition::kGraphAll) {
    extra += layer_block(*record.graph, Layer::kContext, "Context");
  }
  if (condition == GraphCondition::kGraphAll) {
    extra += layer_block(*record.graph, Layer::kInterpretation, "Interpretation");
  }
  return make_request(record, prompt_text(record, PromptCondition::kBaseline, extra), handle);
}

llm::ChatRequest build_request(const DatasetRecord& record, const EvalCondition& condition,
                               const llm::ModelHandle& handle) {
  if (condition.graph != GraphCondition::kNoGraph) {
    if (condition.prompt != PromptCondition::kBaseline) {
      throw Error(ErrorCode::kUsage, "graph conditions run with the baseline prompt only");
    }
    return build_graph_condition_prompt(record, condition.graph, handle);
  }
  return build_prompt(record, condition.prompt, handle);
}

}  // namespace claimgate::eval
