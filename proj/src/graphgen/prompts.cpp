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

#include "claimgate/graphgen/prompts.hpp"

#include <algorithm>
#include <cctype>

#include "claimgate/common/error.hpp"

namespace claimgate::graphgen {

namespace {

struct OpName {
  CorruptionOp op;
  const char* name;
};

constexpr OpName kOpNames[] = {
    {CorruptionOp::kScopeSwap, "ScopeSwap"},
    {CorruptionOp::kOvergeneralization, "Overgeneralization"},
    {CorruptionOp::kQualifierOmission, "QualifierOmission"},
    {CorruptionOp::kPopulationShift, "PopulationShift"},
    {CorruptionOp::kConditionalBoundaryFlip, "ConditionalBoundaryFlip"},
    {CorruptionOp::kCrossAttributionSwap, "CrossAttributionSwap"},
    {CorruptionOp::kLocalToGlobalOverreach, "LocalToGlobalOverreach"},
    {CorruptionOp::kAggregationMisuse, "AggregationMisuse"},
};

std::string squash(const std::string& s) {
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c)) out += static_cast<char>(std::tolower(c));
  }
  return out;
}

// One string per domain: clinical, table, chart.
struct Branch {
  const char* clinical;
  const char* table;
  const char* chart;
  const char* pick(Domain d) const {
    return d == Domain::kNli4ct ? clinical : d == Domain::kScitab ? table : chart;
  }
};

constexpr Branch kGraphGiven = {
    "clinical trial: a full document, a target excerpt, and a feasible claim",
    "table: a table and a feasible claim",
    "chart: an image and a feasible claim",
};
constexpr Branch kObservationFocus = {
    "clinical trial: include numerical values, cohort/arm labels, outcome definitions, "
    "denominators, eligibility criteria, measurement definitions, timeframes.",
    "table: describe structural regions or bindings (rows, columns, headers); focus on "
    "distributions, hierarchy, or constraints; avoid isolated cells unless they define outliers.",
    "chart: describe visible anchors (legend, axes, ticks, panels, marks); include positions, "
    "scales, labels, and annotated elements.",
};
constexpr Branch kContextFocus = {
    "clinical trial: connect observations to broader trial structure.",
    "table: describe structural relationships (ordering, gaps, trends, scope boundaries).",
    "chart: describe structural relationships (ordering, gaps, trends, scope boundaries).",
};
constexpr Branch kInterpretationFocus = {
    "clinical trial: ground in full document; focus on population, endpoints, conditions, or "
    "applicability.",
    "table: focus on ranking scope, comparison validity, ordering, representativeness.",
    "chart: focus on trends, generalization, stability, or what values represent.",
};
constexpr Branch kClaimGiven = {
    "clinical trial: full document, target excerpt, source claim;",
    "table: table, source claim;",
    "chart: image, source claim;",
};
constexpr Branch kDomainCorruption = {
    "Clinical trial: errors arise from scope, conditions, populations, or trial structure.",
    "Table: errors arise from structural relationships such as grouping, units, or aggregation, "
    "and should involve multiple regions (e.g., row group + footnote + column).",
    "Chart: errors arise from visual structure such as scope, trend, grouping, or segmentation, "
    "and should involve multiple regions or patterns in the figure.",
};

constexpr const char* kGraphTemplate =
    "Build a reasoning graph for claim verification. You are given:\n"
    "- {given}\n"
    "The claim is the surface. Your job is to write TRUE context beneath it so later we can "
    "create subtle misinformation by mischaracterizing that context. Write three layers:\n"
    "\n"
    "LAYER 1 --- OBSERVATIONS (CLAIM-ANCHORING O1..O5: elements related to or directly "
    "supporting the claim)\n"
    "- {observation_focus}\n"
    "Rules: all observations must be literal and directly present in the input; no arithmetic, "
    "comparison, or inference.\n"
    "\n"
    "LAYER 2 --- CONTEXT (describe how observations relate structurally)\n"
    "- {context_focus}\n"
    "Rules: each context step must cite >=2 observations; must be directly supported by the "
    "input; do NOT restate the claim.\n"
    "\n"
    "LAYER 3 --- INTERPRETATION (explain what the contextual structure implies)\n"
    "- {interpretation_focus}\n"
    "Rules: each interpretation step must cite >=2 context steps; must remain grounded in the "
    "input; do NOT restate the claim.\n";

constexpr const char* kGraphOutput =
    "Output format: return only a JSON object\n"
    "{\"nodes\": [{\"id\": \"O1\", \"layer\": \"observation\", \"text\": \"...\", \"cites\": []}, "
    "...]}\n"
    "with exactly five observation nodes O1..O5, three context nodes C1..C3 and three "
    "interpretation nodes I1..I3. Context nodes list the observation ids they cite; "
    "interpretation nodes list the context ids they cite.\n";

constexpr const char* kClaimTemplate =
    "Input. Generate a plausible-but-false (infeasible) claim. You are given: {given} and a "
    "reasoning graph with nodes O (observations: concrete facts), C (context: structural "
    "relationships), and I (interpretation: how structure supports conclusions).\n"
    "\n"
    "Core idea. Preserve observations: keep all entities, values, labels, and visible evidence "
    "unchanged; the claim must remain grounded in the same observations as the source claim. "
    "Corrupt reasoning: introduce a minimal but incorrect structural interpretation; the error "
    "must come from how evidence is combined, not what is observed; the claim should remain "
    "locally plausible.\n"
    "\n"
    "Structural falsifiability. The claim must (1) not be falsifiable by checking a single value, "
    "cell, or sentence; (2) only be falsifiable by combining multiple pieces of evidence; and "
    "(3) require integrating different regions, passages, or structures.\n"
    "\n"
    "Domain-specific corruption. {domain_corruption}\n"
    "\n"
    "What to do. (A) Choose exactly one context (C) or interpretation (I) node to corrupt. "
    "(B) Write corrupted_node_text as a minimal change to the original structure; keep "
    "observations unchanged and make the error subtle and plausible. (C) Write propagation_notes "
    "in 1-2 sentences explaining how the corrupted structure leads to the false claim. (D) Write "
    "infeasible_claim in natural, domain-appropriate language; reuse the same observations as the "
    "source claim; do not mention counterevidence; do not rely on exact numeric contradictions.\n"
    "\n"
    "Self-check (required). The claim must be (1) locally plausible using the same evidence as "
    "the source claim; (2) not falsifiable from a single observation or sentence; (3) refutable "
    "only by combining multiple pieces of evidence; (4) free of new entities, values, or external "
    "knowledge; and (5) not obviously false or ambiguous to a careful reader. If any condition "
    "fails, revise.\n"
    "\n"
    "Disallowed. Changing or fabricating observations; explicit contradictions (numeric flip, "
    "label swap); causal or normative claims; external knowledge not in the input; trivial or "
    "single-step falsification.\n";

constexpr const char* kClaimOutput =
    "Output format: return only a JSON object with the keys target_node_id, operation, "
    "corrupted_node_text, propagation_notes, infeasible_claim.\n";

constexpr const char* kSelfCheckTemplate =
    "You are auditing a generated infeasible claim against its source material and reasoning "
    "graph. Judge each condition independently. The claim must be\n"
    "(1) locally plausible using the same evidence as the source claim;\n"
    "(2) not falsifiable from a single observation or sentence;\n"
    "(3) refutable only by combining multiple pieces of evidence;\n"
    "(4) free of new entities, values, or external knowledge; and\n"
    "(5) not obviously false or ambiguous to a careful reader.\n";

constexpr const char* kSelfCheckOutput =
    "Output format: return only a JSON object with boolean fields locally_plausible, "
    "not_single_step_falsifiable, compositionally_refutable, no_new_entities, "
    "not_obviously_false.\n";

constexpr const char* kRephraseSurface =
    "Rewrite the claim below as a longer sentence in formal academic register. Keep every "
    "entity, quantity, condition and scope restriction, and do not add or remove any assertion. "
    "Return only the rewritten claim.\n";

constexpr const char* kRephraseCross =
    "Paraphrase the claim below in your own words. Keep every entity, quantity, condition and "
    "scope restriction, and do not add or remove any assertion. Return only the paraphrase.\n";

std::string fill(std::string text, const std::string& key, const std::string& value) {
  std::string needle = "{" + key + "}";
  for (auto pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + value.size())) {
    text.replace(pos, needle.size(), value);
  }
  return text;
}

std::string source_block(const SourceRecord& s) {
  std::string out;
  if (const auto* c = std::get_if<ClinicalEvidence>(&s.evidence)) {
    if (!c->full_document.empty()) out += "Full document:\n" + c->full_document + "\n\n";
    out += "Target excerpt:\n" + c->excerpt + "\n\n";
  } else if (std::holds_alternative<TableEvidence>(s.evidence)) {
    out += "Table:\n" + evidence_text(s.evidence) + "\n";
  } else {
    const auto& ch = std::get<ChartEvidence>(s.evidence);
    out += "Chart: see the attached image.\n";
    if (!ch.caption.empty()) out += "Caption: " + ch.caption + "\n";
    out += "\n";
  }
  out += "Source claim:\n" + s.feasible_claim + "\n";
  return out;
}

}  // namespace

const char* to_string(CorruptionOp op) {
  for (const auto& n : kOpNames)
    if (n.op == op) return n.name;
  return "ScopeSwap";
}

std::optional<CorruptionOp> corruption_op_from_string(const std::string& s) {
  std::string key = squash(s);
  for (const auto& n : kOpNames)
    if (squash(n.name) == key) return n.op;
  return std::nullopt;
}

const char* to_string(RephraseStyle s) {
  return s == RephraseStyle::kSurfaceForm ? "surface-form" : "cross-model";
}

RephraseStyle rephrase_style_from_string(const std::string& s) {
  if (s == "surface-form") return RephraseStyle::kSurfaceForm;
  if (s == "cross-model") return RephraseStyle::kCrossModel;
  throw Error(ErrorCode::kUsage, "rephrase style must be surface-form or cross-model");
}

std::string graph_prompt(const SourceRecord& source) {
  std::string t = kGraphTemplate;
  t = fill(t, "given", kGraphGiven.pick(source.domain));
  t = fill(t, "observation_focus", kObservationFocus.pick(source.domain));
  t = fill(t, "context_focus", kContextFocus.pick(source.domain));
  t = fill(t, "interpretation_focus", kInterpretationFocus.pick(source.domain));
  return t + "\n" + source_block(source) + "\n" + kGraphOutput;
}

std::string corruption_prompt(const SourceRecord& source, const ReasoningGraph& graph,
                              const std::optional<std::string>& target,
                              const std::optional<CorruptionOp>& op) {
  std::string t = kClaimTemplate;
  t = fill(t, "given", kClaimGiven.pick(source.domain));
  t = fill(t, "domain_corruption", kDomainCorruption.pick(source.domain));
  t += "\n" + source_block(source) + "\nReasoning graph:\n" + render_graph(graph) + "\n";
  if (target) t += "Corrupt node: " + *target + "\n";
  if (op) t += "Suggested operation: " + std::string(to_string(*op)) + "\n";
  return t + kClaimOutput;
}

std::string self_check_prompt(const SourceRecord& source, const ReasoningGraph& graph,
                              const std::string& claim) {
  return std::string(kSelfCheckTemplate) + "\n" + source_block(source) + "\nReasoning graph:\n" +
         render_graph(graph) + "\nInfeasible claim:\n" + claim + "\n\n" + kSelfCheckOutput;
}

std::string rephrase_prompt(const std::string& claim, RephraseStyle style) {
  return std::string(style == RephraseStyle::kSurfaceForm ? kRephraseSurface : kRephraseCross) +
         "\nClaim: " + claim + "\n";
}

std::string prompt_hash() {
  std::string all = std::string(kGraphTemplate) + kGraphOutput + kClaimTemplate + kClaimOutput +
                    kSelfCheckTemplate + kSelfCheckOutput + kRephraseSurface + kRephraseCross;
  for (const Branch* b : {&kGraphGiven, &kObservationFocus, &kContextFocus, &kInterpretationFocus,
                          &kClaimGiven, &kDomainCorruption}) {
    all += b->clinical;
    all += b->table;
    all += b->chart;
  }
  return sha256_hex(all);
}

}  // namespace claimgate::graphgen
