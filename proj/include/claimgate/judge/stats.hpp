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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "claimgate/judge/rubric.hpp"

namespace claimgate::judge {

struct ScoreCell {
  std::size_t n = 0;
  std::optional<double> mean;  // absent when n == 0
};

struct ClassScores {
  ScoreCell tn;   // negative correctly rejected
  ScoreCell fn;   // negative accepted
  ScoreCell avg;  // every trace of the class
};

struct ScoreTable {
  ClassScores standard_neg;
  ClassScores adv_neg;

  Json to_json() const;
};

// A 0-100 score with the grouping keys; judge aggregates or human ratings.
struct ScoredTrace {
  eval::ClaimClass claim_class = eval::ClaimClass::kStandardNeg;
  bool verdict_correct = false;
  double score = 0;
};

// Mean score per (class, TN/FN) cell and per class. Only standard and
// adversarial negatives are grouped. Errors: empty-input.
ScoreTable group_scores(std::span<const ScoredTrace> scores);
ScoreTable group_scores(std::span<const TraceScore> scores);

// Markdown table, one row per label: TN, FN and Avg for each negative class.
std::string render_score_table(const std::vector<std::pair<std::string, ScoreTable>>& rows);

// Average ranks (1-based); ties share the mean of the positions they span.
std::vector<double> average_ranks(std::span<const double> values);

// Spearman's rho as the Pearson correlation of average ranks. nullopt when
// either list is constant. Errors: length-mismatch; invalid-request when
// fewer than 3 pairs.
std::optional<double> spearman(std::span<const double> a, std::span<const double> b);

struct AgreementPair {
  std::string stratum;
  double human = 0;
  double judge = 0;
};

struct StratumAgreement {
  std::size_t n = 0;
  std::optional<double> rho;  // nullopt when undefined (constant or n < 3)
};

struct AgreementReport {
  std::map<std::string, StratumAgreement> strata;
  StratumAgreement pooled;
  std::optional<double> mean_rho;  // unweighted mean over defined strata

  Json to_json() const;
};

AgreementReport agreement(std::span<const AgreementPair> pairs);

}  // namespace claimgate::judge
