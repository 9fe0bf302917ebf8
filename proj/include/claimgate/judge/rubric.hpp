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
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "claimgate/eval/dataset.hpp"
#include "claimgate/eval/run.hpp"
#include "claimgate/llm/gateway.hpp"

namespace claimgate::judge {

enum class Dimension { kConstraintEnumeration, kNonSalientCoverage, kEvidenceBoundary, kVerdictWarrant };
inline constexpr std::array<Dimension, 4> kDimensions = {
    Dimension::kConstraintEnumeration, Dimension::kNonSalientCoverage, Dimension::kEvidenceBoundary,
    Dimension::kVerdictWarrant};

const char* to_string(Dimension d);  // constraint_enumeration, ...
const char* display_name(Dimension d);  // "Constraint enumeration", ...

struct Anchor {
  const char* salient;  // -2
  const char* full_cwa;  // +2
};
Anchor anchor(Dimension d);

using DimensionScores = std::array<int, 4>;  // indexed like kDimensions, each in [-2, 2]

// ((sum + 8) / 16) * 100.
double aggregate_score(const DimensionScores& scores);

struct TraceScore {
  std::string record_id;
  eval::ClaimClass claim_class = eval::ClaimClass::kStandardNeg;
  bool verdict_correct = false;
  DimensionScores scores{};
  std::vector<std::string> warnings;
  std::string raw;

  double aggregate() const { return aggregate_score(scores); }
  Json to_json() const;
  static TraceScore from_json(const Json& j);
};

std::string judge_prompt(const std::string& trace, const std::string& evidence, const std::string& claim);

struct ParsedJudgeReply {
  DimensionScores scores{};
  std::vector<std::string> warnings;
};

// Accepts a JSON object keyed by dimension (optionally nested under
// "scores") or "Dimension: +1" lines. Non-integer scores round to nearest
// with a warning. Errors: judge-parse-failure when a dimension is missing or
// a score falls outside [-2, 2].
ParsedJudgeReply parse_judge_reply(const std::string& reply);

// Errors: empty-input for a blank trace; judge-parse-failure carrying the raw
// reply in the message.
TraceScore judge_trace(llm::Gateway& gateway, const std::string& trace, const std::string& evidence,
                       const std::string& claim, const llm::ModelHandle& judge,
                       const std::optional<std::filesystem::path>& image = std::nullopt);

struct JudgeFailure {
  std::string record_id;
  std::string code;
  std::string message;
  std::string raw;
};

struct JudgeOptions {
  std::optional<std::filesystem::path> out_dir;  // scores.jsonl, failures.jsonl
  std::size_t workers = 4;
  bool negatives_only = true;  // score tables group standard and adversarial negatives
};

struct JudgeReport {
  std::vector<TraceScore> scores;
  std::vector<JudgeFailure> failures;
  std::size_t resumed = 0;
};

// Scores the reasoning trace of each outcome. Records are looked up in
// `dataset` for evidence and claim text; scores already in out_dir are kept.
JudgeReport judge_outcomes(llm::Gateway& gateway, std::span<const eval::EvalOutcome> outcomes,
                           const eval::Dataset& dataset, const llm::ModelHandle& judge,
                           const JudgeOptions& options = {});

std::vector<TraceScore> load_scores(const std::filesystem::path& path);

}  // namespace claimgate::judge
