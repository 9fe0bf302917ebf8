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
#include <string>
#include <vector>

#include "claimgate/eval/dataset.hpp"
#include "claimgate/eval/prompts.hpp"
#include "claimgate/eval/verdict.hpp"
#include "claimgate/llm/gateway.hpp"

namespace claimgate::eval {

struct EvalOutcome {
  std::string record_id;
  graphgen::Domain domain = graphgen::Domain::kNli4ct;
  ClaimClass claim_class = ClaimClass::kStandardPos;
  Label gold = Label::kFeasible;
  EvalCondition condition;
  llm::ModelHandle handle;
  std::string raw_response;
  Verdict verdict = Verdict::kUnparseable;
  std::vector<std::string> subclaims;
  std::string reasoning_trace;
  bool retried = false;

  bool correct() const { return as_label(verdict) == gold; }
  bool rejected() const { return verdict == Verdict::kInfeasible; }
  Json to_json() const;
  static EvalOutcome from_json(const Json& j);
};

struct RunOptions {
  std::optional<std::filesystem::path> out_dir;  // outcomes.jsonl + manifest.json; in-memory when unset
  std::size_t workers = 4;
  bool retry_unparseable = false;  // one extra request with a distinct cache salt
  std::optional<std::size_t> max_new_records;  // stop early (batching, interruption tests)
};

struct RecordFailure {
  std::string record_id;
  std::string code;
  std::string message;
};

struct RunReport {
  std::vector<EvalOutcome> outcomes;  // dataset order, including resumed ones
  std::size_t resumed = 0;
  std::size_t queried = 0;
  std::vector<RecordFailure> failures;
  bool partial() const { return !failures.empty(); }
};

// Evaluates every record under one model handle and condition. With an
// out_dir, completed outcomes persist as they arrive and a rerun only queries
// records missing from outcomes.jsonl; a manifest from a different dataset,
// handle or condition raises inconsistent-inputs. Provider errors are
// collected per record rather than thrown.
RunReport run_eval(llm::Gateway& gateway, const Dataset& dataset, const llm::ModelHandle& handle,
                   const EvalCondition& condition, const RunOptions& options = {});

std::vector<EvalOutcome> load_outcomes(const std::filesystem::path& path);
void write_outcomes(const std::filesystem::path& path, const std::vector<EvalOutcome>& outcomes);

}  // namespace claimgate::eval
