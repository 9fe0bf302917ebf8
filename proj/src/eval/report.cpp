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

#include "claimgate/eval/report.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "claimgate/common/error.hpp"

namespace claimgate::eval {

using graphgen::Domain;

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s = buf;
  if (s.rfind("-0", 0) == 0 && std::stod(s) == 0.0) s.erase(0, 1);
  return s;
}

std::string format_delta(double delta) {
  std::string mag = fixed(std::fabs(delta), 1);
  if (std::stod(mag) == 0.0) return mag;
  return (delta < 0 ? "↓" : "↑") + mag;
}

namespace {

const char* domain_title(Domain d) {
  switch (d) {
    case Domain::kNli4ct: return "NLI4CT";
    case Domain::kScitab: return "SCITAB";
    case Domain::kSciver: return "SciVer";
  }
  return "";
}

std::string opt_pct(const std::optional<double>& v) { return v ? fixed(*v, 1) : "-"; }

std::string counts(const ClassTally& t) {
  return std::to_string(t.correct) + "/" + std::to_string(t.total) +
         (t.unparseable ? " (" + std::to_string(t.unparseable) + " unparseable)" : "");
}

}  // namespace

std::string render_markdown(const std::vector<MetricsRow>& rows) {
  std::set<Domain> domains;
  std::vector<std::string> models;
  std::map<std::pair<std::string, Domain>, const MetricsReport*> cell;
  for (const auto& r : rows) {
    domains.insert(r.domain);
    if (std::find(models.begin(), models.end(), r.model) == models.end()) models.push_back(r.model);
    cell[{r.model, r.domain}] = &r.metrics;
  }

  std::string out = "| Model |";
  std::string rule = "|---|";
  for (auto d : domains) {
    std::string t = domain_title(d);
    out += " " + t + " Pos.(%) | " + t + " Neg.(%) | " + t + " F1 | " + t + " Adv Neg.(%) | " + t +
           " Δ(%) |";
    rule += "---:|---:|---:|---:|---:|";
  }
  out += "\n" + rule + "\n";
  for (const auto& model : models) {
    out += "| " + model + " |";
    for (auto d : domains) {
      auto it = cell.find({model, d});
      if (it == cell.end()) {
        out += " - | - | - | - | - |";
        continue;
      }
      const auto& m = *it->second;
      std::string delta = m.delta ? format_delta(*m.delta) : "-";
      if (m.delta && std::fabs(*m.delta) > 10.0) delta = "**" + delta + "**";
      out += " " + fixed(m.pos_acc, 1) + " | " + fixed(m.std_neg_acc, 1) + " | " +
             fixed(m.macro_f1, 2) + " | " + opt_pct(m.adv_neg_acc) + " | " + delta + " |";
    }
    out += "\n";
  }
  out += "\nCounts (correct/total):\n\n";
  for (const auto& r : rows) {
    out += "- " + r.model + ", " + domain_title(r.domain) + ": pos " + counts(r.metrics.pos) +
           ", neg " + counts(r.metrics.std_neg) + ", adv " + counts(r.metrics.adv_neg);
    if (r.metrics.rephrased_neg.total) out += ", rephrased " + counts(r.metrics.rephrased_neg);
    out += "\n";
  }
  return out;
}

std::string render_csv(const std::vector<MetricsRow>& rows) {
  std::string out =
      "model,domain,pos_acc,std_neg_acc,macro_f1,adv_neg_acc,delta,rephrased_neg_acc,"
      "pos_correct,pos_total,std_neg_correct,std_neg_total,adv_neg_correct,adv_neg_total,"
      "rephrased_neg_correct,rephrased_neg_total,unparseable\n";
  auto opt = [](const std::optional<double>& v) { return v ? fixed(*v, 4) : std::string(); };
  for (const auto& r : rows) {
    const auto& m = r.metrics;
    std::string model = r.model;
    if (model.find_first_of(",\"") != std::string::npos) {
      std::string q = "\"";
      for (char c : model) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      model = q + "\"";
    }
    std::size_t unparseable =
        m.pos.unparseable + m.std_neg.unparseable + m.adv_neg.unparseable + m.rephrased_neg.unparseable;
    out += model + "," + graphgen::to_string(r.domain) + "," + fixed(m.pos_acc, 4) + "," +
           fixed(m.std_neg_acc, 4) + "," + fixed(m.macro_f1, 4) + "," + opt(m.adv_neg_acc) + "," +
           opt(m.delta) + "," + opt(m.rephrased_neg_acc) + "," + std::to_string(m.pos.correct) + "," +
           std::to_string(m.pos.total) + "," + std::to_string(m.std_neg.correct) + "," +
           std::to_string(m.std_neg.total) + "," + std::to_string(m.adv_neg.correct) + "," +
           std::to_string(m.adv_neg.total) + "," + std::to_string(m.rephrased_neg.correct) + "," +
           std::to_string(m.rephrased_neg.total) + "," + std::to_string(unparseable) + "\n";
  }
  return out;
}

Json render_json(const std::vector<MetricsRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back({{"model", r.model}, {"domain", graphgen::to_string(r.domain)},
                   {"metrics", r.metrics.to_json()}});
  }
  return out;
}

std::vector<MetricsRow> parse_metrics_rows(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::kSchemaViolation, "metrics file must hold an array of rows");
  std::vector<MetricsRow> rows;
  for (const auto& r : j) {
    try {
      rows.push_back({r.at("model").get<std::string>(),
                      graphgen::domain_from_string(r.at("domain").get<std::string>()),
                      MetricsReport::from_json(r.at("metrics"))});
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::kSchemaViolation, std::string("metrics row: ") + e.what());
    }
  }
  return rows;
}

std::string render_roc_markdown(const std::string& model, const std::vector<RocPoint>& points) {
  std::string out = "| Model | Condition | TPR | FPR | n infeasible | n feasible |\n"
                    "|---|---|---:|---:|---:|---:|\n";
  for (const auto& p : points) {
    out += "| " + model + " | " + to_string(p.condition) + " | " + fixed(p.tpr, 3) + " | " +
           fixed(p.fpr, 3) + " | " + std::to_string(p.infeasible) + " | " +
           std::to_string(p.feasible) + " |\n";
  }
  return out;
}

std::string render_roc_csv(const std::string& model, const std::vector<RocPoint>& points) {
  std::string out = "model,condition,tpr,fpr,n_infeasible,n_feasible\n";
  for (const auto& p : points) {
    out += model + "," + to_string(p.condition) + "," + fixed(p.tpr, 6) + "," + fixed(p.fpr, 6) +
           "," + std::to_string(p.infeasible) + "," + std::to_string(p.feasible) + "\n";
  }
  return out;
}

}  // namespace claimgate::eval
