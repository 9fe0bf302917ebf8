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

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "claimgate/graphgen/graph.hpp"
#include "claimgate/graphgen/prompts.hpp"
#include "claimgate/graphgen/source.hpp"
#include "claimgate/llm/gateway.hpp"

namespace claimgate::graphgen {

struct CorruptionRecord {
  std::string target_node_id;
  CorruptionOp operation = CorruptionOp::kScopeSwap;
  std::string original_text;
  std::string corrupted_text;
  std::string propagation_notes;

  Json to_json() const;
  static CorruptionRecord from_json(const Json& j);
};

struct CorruptionResult {
  CorruptionRecord record;
  std::string infeasible_claim;
  ReasoningGraph corrupted_graph;  // input graph with only the target text replaced
};

// Five self-check conditions. The LLM verdicts are ANDed with two
// deterministic guards: the entity screen (no_new_entities) and the
// single-unit cover test (not_single_step_falsifiable).
struct SelfCheck {
  bool locally_plausible = false;
  bool not_single_step_falsifiable = false;
  bool compositionally_refutable = false;
  bool no_new_entities = false;
  bool not_obviously_false = false;
  std::vector<std::string> unknown_entities;
  std::optional<std::string> single_step_unit;
  std::optional<std::string> parse_error;

  bool passed() const {
    return locally_plausible && not_single_step_falsifiable && compositionally_refutable &&
           no_new_entities && not_obviously_false;
  }
  Json to_json() const;
  static SelfCheck from_json(const Json& j);
};

enum class CandidateStatus { kPending, kAccepted, kRejectedAmbiguous, kRejectedInvalid };
const char* to_string(CandidateStatus s);
CandidateStatus candidate_status_from_string(const std::string& s);

struct CandidateHardNegative {
  std::string id;
  SourceRecord source;
  ReasoningGraph graph;  // graph before corruption
  CorruptionRecord corruption;
  std::string infeasible_claim;
  SelfCheck self_check;
  CandidateStatus status = CandidateStatus::kPending;
  llm::ModelHandle generator;

  Json to_json() const;
  static CandidateHardNegative from_json(const Json& j);
};

// Receives one JSON object per generation attempt (stage, source_id,
// attempt, raw response, error).
using AttemptLog = std::function<void(const Json&)>;

struct GenerationOptions {
  int max_attempts = 3;
  std::string salt;  // distinguishes repeated generations for one source
  AttemptLog log;
};

// Errors: generation-parse-failure after max_attempts unusable replies;
// provider errors pass through.
ReasoningGraph build_graph(llm::Gateway& gateway, const SourceRecord& source,
                           const llm::ModelHandle& generator, const GenerationOptions& options = {});

// Errors: target-is-observation when `target` names an observation node or
// the model insists on one; generation-parse-failure otherwise.
CorruptionResult corrupt(llm::Gateway& gateway, const ReasoningGraph& graph,
                         const SourceRecord& source, const llm::ModelHandle& generator,
                         const std::optional<std::string>& target = std::nullopt,
                         const std::optional<CorruptionOp>& op = std::nullopt,
                         const GenerationOptions& options = {});

SelfCheck self_check(llm::Gateway& gateway, const SourceRecord& source, const ReasoningGraph& graph,
                     const std::string& claim, const llm::ModelHandle& checker);

struct Rephrased {
  std::string original;
  std::string rephrased;
  RephraseStyle style;
};

Rephrased rephrase_negative(llm::Gateway& gateway, const std::string& claim, RephraseStyle style,
                            const llm::ModelHandle& rephraser);

struct PoolOptions {
  std::filesystem::path out_dir;
  std::size_t per_source = 1;
  llm::ModelHandle generator;
  std::optional<llm::ModelHandle> checker;  // defaults to the generator
  std::size_t workers = 4;
  int max_attempts = 3;
  std::optional<std::size_t> max_new_sources;  // stop early (batching, interruption tests)
};

struct PoolFailure {
  std::string source_id;
  std::string code;
  std::string message;
};

struct PoolReport {
  std::size_t sources = 0;
  std::size_t skipped = 0;            // already in the manifest
  std::size_t generated_sources = 0;  // completed in this run
  std::size_t new_candidates = 0;
  std::vector<PoolFailure> failures;
  std::filesystem::path candidates_path;
  std::filesystem::path manifest_path;
  std::filesystem::path failures_path;
};

// Writes <out_dir>/candidates.jsonl, manifest.json, attempts.jsonl and
// failures.json. Sources already listed in the manifest are skipped, so an
// interrupted run resumes where it stopped. A manifest written with another
// generator profile or prompt set raises inconsistent-inputs.
PoolReport generate_pool(llm::Gateway& gateway, const std::vector<SourceRecord>& sources,
                         const PoolOptions& options);

std::vector<CandidateHardNegative> load_candidates(const std::filesystem::path& path);

}  // namespace claimgate::graphgen
