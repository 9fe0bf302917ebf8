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

#include "claimgate/eval/run.hpp"

namespace claimgate::eval {

struct ClassTally {
  std::size_t total = 0;
  std::size_t correct = 0;
  std::size_t unparseable = 0;  // counted as incorrect

  double accuracy_pct() const { return total ? 100.0 * correct / total : 0.0; }
};

struct MetricsReport {
  ClassTally pos, std_neg, adv_neg, rephrased_neg;
  double pos_acc = 0;      // percent
  double std_neg_acc = 0;  // percent
  std::optional<double> adv_neg_acc;
  std::optional<double> rephrased_neg_acc;
  double macro_f1 = 0;  // fraction, over standard positives and negatives only
  double f1_feasible = 0;
  double f1_infeasible = 0;
  std::optional<double> delta;  // adv_neg_acc - std_neg_acc, percentage points

  Json to_json() const;
  static MetricsReport from_json(const Json& j);
};

// Errors: empty-class when there is no standard positive or no standard
// negative outcome.
MetricsReport compute_metrics(std::span<const EvalOutcome> outcomes);

// Per-class F1 with "feasible" or "infeasible" as the positive class.
// Predictions outside {feasible, infeasible} count only as misses.
double f1_score(std::size_t tp, std::size_t fp, std::size_t fn);

struct RocPoint {
  PromptCondition condition = PromptCondition::kBaseline;
  double tpr = 0;  // P(rejected | gold infeasible)
  double fpr = 0;  // P(rejected | gold feasible)
  std::size_t infeasible = 0;
  std::size_t feasible = 0;

  Json to_json() const;
  static RocPoint from_json(const Json& j);
};

// Rejection is the positive event. Points follow kRocOrder, skipping
// conditions absent from the map. Errors: empty-class when a condition lacks
// feasible or infeasible records.
std::vector<RocPoint> compute_roc(const std::map<PromptCondition, std::vector<EvalOutcome>>& by_condition);

}  // namespace claimgate::eval
