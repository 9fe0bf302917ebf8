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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "claimgate/common/io.hpp"

namespace claimgate::selfverify {

enum class VerifierVerdict { kAccept, kReject };
const char* to_string(VerifierVerdict v);  // accept, reject
VerifierVerdict verifier_verdict_from_string(const std::string& s);

enum class CaseLabel { kTP, kTN, kFPRejectCorrect, kLuckyCatch, kFN };
inline constexpr std::array<CaseLabel, 5> kCaseLabels = {
    CaseLabel::kTP, CaseLabel::kTN, CaseLabel::kFPRejectCorrect, CaseLabel::kLuckyCatch, CaseLabel::kFN};
const char* to_string(CaseLabel l);  // TP, TN, FP_RejectCorrect, LuckyCatch, FN
CaseLabel case_label_from_string(const std::string& s);

// reasoning_valid must be given exactly when the solver was wrong and the
// verifier rejected. Errors: inconsistent-inputs.
CaseLabel classify_case(bool solver_correct, VerifierVerdict verdict, std::optional<bool> reasoning_valid);

struct LabelCounts {
  std::size_t tp = 0, tn = 0, fp_reject_correct = 0, lucky_catch = 0, fn = 0;

  std::size_t n() const { return tp + tn + fp_reject_correct + lucky_catch + fn; }
  std::size_t fp_total() const { return fp_reject_correct + lucky_catch; }
  std::size_t solver_incorrect() const { return tp + lucky_catch + fn; }
  std::size_t solver_correct() const { return tn + fp_reject_correct; }
  std::size_t& at(CaseLabel l);
  std::size_t at(CaseLabel l) const;
  Json to_json() const;
  static LabelCounts from_json(const Json& j);
  friend bool operator==(const LabelCounts&, const LabelCounts&) = default;
};

struct SelfVerifyReport {
  std::string condition;
  LabelCounts counts;
  double accuracy = 0;
  // Rejection-class F1: TP against FP_RejectCorrect + LuckyCatch and FN.
  std::optional<double> f1;
  // Acceptance-class F1 and the mean of both; reported alongside.
  std::optional<double> f1_acceptance;
  std::optional<double> macro_f1;
  std::optional<double> rejection_precision;
  std::optional<double> prec_at_rej;  // TP / (TP + LuckyCatch)

  Json to_json() const;
};

// Errors: empty-input when n = 0.
SelfVerifyReport compute_self_verify_metrics(const LabelCounts& counts, std::string condition = "");

struct ReportRow {
  std::string dataset;
  SelfVerifyReport report;
};
// Columns: Dataset, Variant, n, Acc, F1, TP, TN, FP, FN, Prec@Rej, with FP
// merged and Prec@Rej written as "TP/(TP+LC) ≈ value".
std::string render_self_verify_markdown(std::span<const ReportRow> rows);
std::string render_self_verify_csv(std::span<const ReportRow> rows);

}  // namespace claimgate::selfverify
