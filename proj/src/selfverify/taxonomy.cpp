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

#include "claimgate/selfverify/taxonomy.hpp"

#include <sstream>

#include "claimgate/common/error.hpp"
#include "claimgate/eval/report.hpp"

namespace claimgate::selfverify {

const char* to_string(VerifierVerdict v) { return v == VerifierVerdict::kAccept ? "accept" : "reject"; }

VerifierVerdict verifier_verdict_from_string(const std::string& s) {
  if (s == "accept") return VerifierVerdict::kAccept;
  if (s == "reject") return VerifierVerdict::kReject;
  throw Error(ErrorCode::kSchemaViolation, "unknown verifier verdict: " + s);
}

const char* to_string(CaseLabel l) {
  switch (l) {
    case CaseLabel::kTP: return "TP";
    case CaseLabel::kTN: return "TN";
    case CaseLabel::kFPRejectCorrect: return "FP_RejectCorrect";
    case CaseLabel::kLuckyCatch: return "LuckyCatch";
    case CaseLabel::kFN: return "FN";
  }
  return "?";
}

CaseLabel case_label_from_string(const std::string& s) {
  for (auto l : kCaseLabels) {
    if (s == to_string(l)) return l;
  }
  throw Error(ErrorCode::kSchemaViolation, "unknown case label: " + s);
}

CaseLabel classify_case(bool solver_correct, VerifierVerdict verdict, std::optional<bool> reasoning_valid) {
  const bool needs_reasoning = !solver_correct && verdict == VerifierVerdict::kReject;
  if (needs_reasoning != reasoning_valid.has_value()) {
    throw Error(ErrorCode::kInconsistentInputs,
                needs_reasoning ? "reasoning validity is required for a rejected incorrect solution"
                                : "reasoning validity only applies to a rejected incorrect solution");
  }
  if (solver_correct) {
    return verdict == VerifierVerdict::kAccept ? CaseLabel::kTN : CaseLabel::kFPRejectCorrect;
  }
  if (verdict == VerifierVerdict::kAccept) return CaseLabel::kFN;
  return *reasoning_valid ? CaseLabel::kTP : CaseLabel::kLuckyCatch;
}

std::size_t& LabelCounts::at(CaseLabel l) {
  switch (l) {
    case CaseLabel::kTP: return tp;
    case CaseLabel::kTN: return tn;
    case CaseLabel::kFPRejectCorrect: return fp_reject_correct;
    case CaseLabel::kLuckyCatch: return lucky_catch;
    case CaseLabel::kFN: return fn;
  }
  return tp;
}

std::size_t LabelCounts::at(CaseLabel l) const { return const_cast<LabelCounts&>(*this).at(l); }

Json LabelCounts::to_json() const {
  Json j = Json::object();
  for (auto l : kCaseLabels) j[to_string(l)] = at(l);
  return j;
}

LabelCounts LabelCounts::from_json(const Json& j) {
  LabelCounts c;
  for (auto l : kCaseLabels) c.at(l) = j.value(to_string(l), std::size_t{0});
  return c;
}

namespace {

std::optional<double> ratio(double num, double den) {
  if (den == 0) return std::nullopt;
  return num / den;
}

Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

SelfVerifyReport compute_self_verify_metrics(const LabelCounts& c, std::string condition) {
  if (c.n() == 0) throw Error(ErrorCode::kEmptyInput, "no self-verification cases");
  SelfVerifyReport r;
  r.condition = std::move(condition);
  r.counts = c;
  const double tp = static_cast<double>(c.tp), tn = static_cast<double>(c.tn);
  const double fp = static_cast<double>(c.fp_total()), fn = static_cast<double>(c.fn);
  const double fp_rc = static_cast<double>(c.fp_reject_correct);
  r.accuracy = (tp + tn) / static_cast<double>(c.n());
  // No rejections at all leaves the rejection class undefined.
  if (tp + fp > 0) r.f1 = ratio(2 * tp, 2 * tp + fp + fn);
  if (tn + fn > 0) r.f1_acceptance = ratio(2 * tn, 2 * tn + fn + fp_rc);
  if (r.f1 && r.f1_acceptance) r.macro_f1 = (*r.f1 + *r.f1_acceptance) / 2;
  r.rejection_precision = ratio(tp, tp + fp);
  r.prec_at_rej = ratio(tp, tp + static_cast<double>(c.lucky_catch));
  return r;
}

Json SelfVerifyReport::to_json() const {
  return {{"condition", condition},
          {"n", counts.n()},
          {"counts", counts.to_json()},
          {"accuracy", accuracy},
          {"f1", opt(f1)},
          {"f1_acceptance", opt(f1_acceptance)},
          {"macro_f1", opt(macro_f1)},
          {"rejection_precision", opt(rejection_precision)},
          {"prec_at_rej", opt(prec_at_rej)}};
}

namespace {

std::string cell(const std::optional<double>& v) { return v ? eval::fixed(*v, 3) : "-"; }

std::string prec_cell(const SelfVerifyReport& r) {
  if (!r.prec_at_rej) return "-";
  return std::to_string(r.counts.tp) + "/" + std::to_string(r.counts.tp + r.counts.lucky_catch) + " ≈ " +
         eval::fixed(*r.prec_at_rej, 3);
}

}  // namespace

std::string render_self_verify_markdown(std::span<const ReportRow> rows) {
  std::ostringstream out;
  out << "| Dataset | Variant | n | Acc | F1 | TP | TN | FP | FN | Prec@Rej |\n"
      << "|---|---|---:|---:|---:|---:|---:|---:|---:|---|\n";
  std::string last;
  for (const auto& row : rows) {
    const auto& r = row.report;
    out << "| " << (row.dataset == last ? "" : row.dataset) << " | " << r.condition << " | " << r.counts.n()
        << " | " << eval::fixed(r.accuracy, 3) << " | " << cell(r.f1) << " | " << r.counts.tp << " | "
        << r.counts.tn << " | " << r.counts.fp_total() << " | " << r.counts.fn << " | " << prec_cell(r)
        << " |\n";
    last = row.dataset;
  }
  return out.str();
}

std::string render_self_verify_csv(std::span<const ReportRow> rows) {
  std::ostringstream out;
  out << "dataset,variant,n,acc,f1,macro_f1,tp,tn,fp_reject_correct,lucky_catch,fn,prec_at_rej\n";
  for (const auto& row : rows) {
    const auto& r = row.report;
    auto c = [](const std::optional<double>& v) { return v ? eval::fixed(*v, 4) : std::string(); };
    out << row.dataset << ',' << r.condition << ',' << r.counts.n() << ',' << eval::fixed(r.accuracy, 4) << ','
        << c(r.f1) << ',' << c(r.macro_f1) << ',' << r.counts.tp << ',' << r.counts.tn << ','
        << r.counts.fp_reject_correct << ',' << r.counts.lucky_catch << ',' << r.counts.fn << ','
        << c(r.prec_at_rej) << '\n';
  }
  return out.str();
}

}  // namespace claimgate::selfverify
