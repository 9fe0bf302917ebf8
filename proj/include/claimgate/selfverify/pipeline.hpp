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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "claimgate/eval/prompts.hpp"
#include "claimgate/llm/gateway.hpp"
#include "claimgate/selfverify/taxonomy.hpp"

namespace claimgate::selfverify {

struct Problem {
  std::string id;
  std::string statement;
  std::string gold_answer;

  Json to_json() const;
  static Problem from_json(const Json& j);
};

// JSONL {id, statement, gold_answer}. Errors: schema-violation (with
// path:line), including duplicate ids.
std::vector<Problem> load_problems(const std::filesystem::path& path);

// Only baseline, owa and cwa apply. Errors: usage.
void require_self_verify_condition(eval::PromptCondition condition);

std::string solver_prompt(const Problem& p);
std::string verifier_prompt(const Problem& p, const std::string& solver_response,
                            eval::PromptCondition condition);
std::string judge_prompt(const Problem& p, const std::string& solver_response, VerifierVerdict verdict,
                         const std::string& verifier_reasoning);

struct ParsedVerifierReply {
  VerifierVerdict verdict = VerifierVerdict::kAccept;
  bool parsed = false;  // false: no ACCEPT/REJECT label found, read as accept
  std::string reasoning;
};
ParsedVerifierReply parse_verifier_reply(const std::string& text);

struct JudgeFinding {
  bool solver_correct = false;
  bool verdict_correct = false;
  std::optional<bool> reasoning_valid;
};
// JSON with solver_correct, verdict_correct and reasoning_valid. Errors:
// judge-parse-failure.
JudgeFinding parse_judge_finding(const std::string& text);

struct SelfVerifyCase {
  std::string problem_id;
  std::string condition;
  std::string solver_response;
  VerifierVerdict verifier_verdict = VerifierVerdict::kAccept;
  bool verifier_parsed = true;
  std::string verifier_reasoning;
  bool judge_solver_correct = false;
  bool judge_verdict_correct = false;
  std::optional<bool> judge_reasoning_valid;
  CaseLabel label = CaseLabel::kTN;
  std::vector<std::string> warnings;
  std::string judge_raw;

  Json to_json() const;
  static SelfVerifyCase from_json(const Json& j);
};

LabelCounts count_labels(std::span<const SelfVerifyCase> cases);
SelfVerifyReport compute_self_verify_metrics(std::span<const SelfVerifyCase> cases, std::string condition);

struct SelfVerifyOptions {
  std::optional<std::filesystem::path> out_dir;  // cases.jsonl, failures.jsonl, manifest.json
  std::size_t workers = 4;
  bool allow_same_judge = false;
};

struct ProblemFailure {
  std::string problem_id;
  std::string code;
  std::string message;
};

struct SelfVerifyRun {
  std::vector<SelfVerifyCase> cases;  // problem order
  std::vector<ProblemFailure> failures;
  std::size_t resumed = 0;
  bool partial() const { return !failures.empty(); }
};

// solve -> verify -> judge per problem, problems in parallel. The solver
// request carries no condition, so with a cache every condition verifies
// the same solver response. Errors: usage (judge equals solver, or a
// decomposition condition), empty-input, inconsistent-inputs (out_dir
// belongs to another run).
SelfVerifyRun run_self_verify(llm::Gateway& gateway, std::span<const Problem> problems,
                              const llm::ModelHandle& solver, const llm::ModelHandle& verifier,
                              const llm::ModelHandle& judge, eval::PromptCondition condition,
                              const SelfVerifyOptions& options = {});

std::vector<SelfVerifyCase> load_cases(const std::filesystem::path& path);

}  // namespace claimgate::selfverify
