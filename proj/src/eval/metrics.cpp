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

#include "claimgate/eval/metrics.hpp"

#include "claimgate/common/error.hpp"

namespace claimgate::eval {

double f1_score(std::size_t tp, std::size_t fp, std::size_t fn) {
  const std::size_t denom = 2 * tp + fp + fn;
  return denom ? 2.0 * tp / denom : 0.0;
}

Json MetricsReport::to_json() const {
  auto cell = [](const ClassTally& t) {
    return Json{{"total", t.total}, {"correct", t.correct}, {"unparseable", t.unparseable}};
  };
  auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(); };
  return {{"pos_acc", pos_acc},
          {"std_neg_acc", std_neg_acc},
          {"adv_neg_acc", opt(adv_neg_acc)},
          {"rephrased_neg_acc", opt(rephrased_neg_acc)},
          {"macro_f1", macro_f1},
          {"f1_feasible", f1_feasible},
          {"f1_infeasible", f1_infeasible},
          {"delta", opt(delta)},
          {"counts",
           {{"standard_pos", cell(pos)},
            {"standard_neg", cell(std_neg)},
            {"adv_neg", cell(adv_neg)},
            {"rephrased_neg", cell(rephrased_neg)}}}};
}

MetricsReport MetricsReport::from_json(const Json& j) {
  auto cell = [](const Json& c) {
    ClassTally t;
    t.total = c.value("total", std::size_t{0});
    t.correct = c.value("correct", std::size_t{0});
    t.unparseable = c.value("unparseable", std::size_t{0});
    return t;
  };
  auto opt = [&](const char* key) -> std::optional<double> {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return j[key].get<double>();
  };
  MetricsReport m;
  try {
    m.pos_acc = j.at("pos_acc").get<double>();
    m.std_neg_acc = j.at("std_neg_acc").get<double>();
    m.adv_neg_acc = opt("adv_neg_acc");
    m.rephrased_neg_acc = opt("rephrased_neg_acc");
    m.macro_f1 = j.at("macro_f1").get<double>();
    m.f1_feasible = j.value("f1_feasible", 0.0);
    m.f1_infeasible = j.value("f1_infeasible", 0.0);
    m.delta = opt("delta");
    if (j.contains("counts")) {
      const auto& c = j["counts"];
      m.pos = cell(c.value("standard_pos", Json::object()));
      m.std_neg = cell(c.value("standard_neg", Json::object()));
      m.adv_neg = cell(c.value("adv_neg", Json::object()));
      m.rephrased_neg = cell(c.value("rephrased_neg", Json::object()));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kSchemaViolation, std::string("metrics: ") + e.what());
  }
  return m;
}

MetricsReport compute_metrics(std::span<const EvalOutcome> outcomes) {
  MetricsReport m;
  // Feasible-class confusion over the standard subset.
  std::size_t pos_said_feasible = 0, neg_said_feasible = 0;
  std::size_t pos_said_infeasible = 0, neg_said_infeasible = 0;
  for (const auto& o : outcomes) {
    ClassTally* t = nullptr;
    switch (o.claim_class) {
      case ClaimClass::kStandardPos: t = &m.pos; break;
      case ClaimClass::kStandardNeg: t = &m.std_neg; break;
      case ClaimClass::kAdvNeg: t = &m.adv_neg; break;
      case ClaimClass::kRephrasedNeg: t = &m.rephrased_neg; break;
    }
    ++t->total;
    if (o.correct()) ++t->correct;
    if (o.verdict == Verdict::kUnparseable) ++t->unparseable;

    if (o.claim_class == ClaimClass::kStandardPos) {
      pos_said_feasible += o.verdict == Verdict::kFeasible;
      pos_said_infeasible += o.verdict == Verdict::kInfeasible;
    } else if (o.claim_class == ClaimClass::kStandardNeg) {
      neg_said_feasible += o.verdict == Verdict::kFeasible;
      neg_said_infeasible += o.verdict == Verdict::kInfeasible;
    }
  }
  if (m.pos.total == 0 || m.std_neg.total == 0) {
    throw Error(ErrorCode::kEmptyClass,
                "metrics need at least one standard_pos and one standard_neg outcome");
  }
  m.pos_acc = m.pos.accuracy_pct();
  m.std_neg_acc = m.std_neg.accuracy_pct();
  if (m.adv_neg.total) {
    m.adv_neg_acc = m.adv_neg.accuracy_pct();
    m.delta = *m.adv_neg_acc - m.std_neg_acc;
  }
  if (m.rephrased_neg.total) m.rephrased_neg_acc = m.rephrased_neg.accuracy_pct();

  m.f1_feasible = f1_score(pos_said_feasible, neg_said_feasible, m.pos.total - pos_said_feasible);
  m.f1_infeasible =
      f1_score(neg_said_infeasible, pos_said_infeasible, m.std_neg.total - neg_said_infeasible);
  m.macro_f1 = (m.f1_feasible + m.f1_infeasible) / 2.0;
  return m;
}

Json RocPoint::to_json() const {
  return {{"condition", to_string(condition)}, {"tpr", tpr}, {"fpr", fpr},
          {"infeasible", infeasible}, {"feasible", feasible}};
}

RocPoint RocPoint::from_json(const Json& j) {
  RocPoint p;
  try {
    p.condition = prompt_condition_from_string(j.at("condition").get<std::string>());
    p.tpr = j.at("tpr").get<double>();
    p.fpr = j.at("fpr").get<double>();
    p.infeasible = j.value("infeasible", std::size_t{0});
    p.feasible = j.value("feasible", std::size_t{0});
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kSchemaViolation, std::string("roc point: ") + e.what());
  }
  return p;
}

std::vector<RocPoint> compute_roc(const std::map<PromptCondition, std::vector<EvalOutcome>>& by_condition) {
  std::vector<RocPoint> points;
  for (auto c : kRocOrder) {
    auto it = by_condition.find(c);
    if (it == by_condition.end()) continue;
    RocPoint p;
    p.condition = c;
    std::size_t tp = 0, fp = 0;
    for (const auto& o : it->second) {
      if (o.gold == Label::kInfeasible) {
        ++p.infeasible;
        tp += o.rejected();
      } else {
        ++p.feasible;
        fp += o.rejected();
      }
    }
    if (p.infeasible == 0 || p.feasible == 0) {
      throw Error(ErrorCode::kEmptyClass, std::string("condition ") + to_string(c) +
                                              " needs both feasible and infeasible records");
    }
    p.tpr = static_cast<double>(tp) / p.infeasible;
    p.fpr = static_cast<double>(fp) / p.feasible;
    points.push_back(p);
  }
  return points;
}

}  // namespace claimgate::eval
