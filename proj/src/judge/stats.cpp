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

#include "claimgate/judge/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "claimgate/common/error.hpp"
#include "claimgate/eval/report.hpp"

namespace claimgate::judge {

namespace {

struct Acc {
  std::size_t n = 0;
  double sum = 0;
  void add(double v) {
    ++n;
    sum += v;
  }
  ScoreCell cell() const {
    ScoreCell c;
    c.n = n;
    if (n) c.mean = sum / static_cast<double>(n);
    return c;
  }
};

Json cell_json(const ScoreCell& c) { return {{"n", c.n}, {"mean", c.mean ? Json(*c.mean) : Json()}}; }

Json class_json(const ClassScores& c) {
  return {{"tn", cell_json(c.tn)}, {"fn", cell_json(c.fn)}, {"avg", cell_json(c.avg)}};
}

std::string cell_text(const ScoreCell& c) { return c.mean ? eval::fixed(*c.mean, 1) : "-"; }

}  // namespace

Json ScoreTable::to_json() const {
  return {{"standard_neg", class_json(standard_neg)}, {"adv_neg", class_json(adv_neg)}};
}

ScoreTable group_scores(std::span<const TraceScore> scores) {
  std::vector<ScoredTrace> plain;
  plain.reserve(scores.size());
  for (const auto& s : scores) plain.push_back({s.claim_class, s.verdict_correct, s.aggregate()});
  return group_scores(std::span<const ScoredTrace>(plain));
}

ScoreTable group_scores(std::span<const ScoredTrace> scores) {
  if (scores.empty()) throw Error(ErrorCode::kEmptyInput, "no trace scores to group");
  Acc std_tn, std_fn, std_all, adv_tn, adv_fn, adv_all;
  for (const auto& s : scores) {
    const double v = s.score;
    if (s.claim_class == eval::ClaimClass::kStandardNeg) {
      (s.verdict_correct ? std_tn : std_fn).add(v);
      std_all.add(v);
    } else if (s.claim_class == eval::ClaimClass::kAdvNeg) {
      (s.verdict_correct ? adv_tn : adv_fn).add(v);
      adv_all.add(v);
    }
  }
  ScoreTable t;
  t.standard_neg = {std_tn.cell(), std_fn.cell(), std_all.cell()};
  t.adv_neg = {adv_tn.cell(), adv_fn.cell(), adv_all.cell()};
  return t;
}

std::string render_score_table(const std::vector<std::pair<std::string, ScoreTable>>& rows) {
  std::string out =
      "| Model | Standard TN | Standard FN | Standard Avg | Adv TN | Adv FN | Adv Avg |\n"
      "|---|---:|---:|---:|---:|---:|---:|\n";
  for (const auto& [label, t] : rows) {
    out += "| " + label + " | " + cell_text(t.standard_neg.tn) + " | " + cell_text(t.standard_neg.fn) +
           " | " + cell_text(t.standard_neg.avg) + " | " + cell_text(t.adv_neg.tn) + " | " +
           cell_text(t.adv_neg.fn) + " | " + cell_text(t.adv_neg.avg) + " |\n";
  }
  return out;
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j (0-based) share rank mean(i+1 .. j+1).
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch, "spearman inputs differ in length: " +
                                                std::to_string(a.size()) + " vs " +
                                                std::to_string(b.size()));
  }
  if (a.size() < 3) throw Error(ErrorCode::kInvalidRequest, "spearman needs at least 3 pairs");
  auto ra = average_ranks(a);
  auto rb = average_ranks(b);
  const double n = static_cast<double>(ra.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0 || sbb == 0) return std::nullopt;
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

namespace {

StratumAgreement agreement_of(const std::vector<double>& h, const std::vector<double>& j) {
  StratumAgreement s;
  s.n = h.size();
  if (s.n >= 3) s.rho = spearman(h, j);
  return s;
}

Json stratum_json(const StratumAgreement& s) {
  return {{"n", s.n}, {"rho", s.rho ? Json(*s.rho) : Json()}};
}

}  // namespace

AgreementReport agreement(std::span<const AgreementPair> pairs) {
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> by;
  std::vector<double> all_h, all_j;
  for (const auto& p : pairs) {
    by[p.stratum].first.push_back(p.human);
    by[p.stratum].second.push_back(p.judge);
    all_h.push_back(p.human);
    all_j.push_back(p.judge);
  }
  AgreementReport r;
  double sum = 0;
  std::size_t defined = 0;
  for (const auto& [name, lists] : by) {
    auto s = agreement_of(lists.first, lists.second);
    if (s.rho) {
      sum += *s.rho;
      ++defined;
    }
    r.strata[name] = s;
  }
  r.pooled = agreement_of(all_h, all_j);
  if (defined) r.mean_rho = sum / static_cast<double>(defined);
  return r;
}

Json AgreementReport::to_json() const {
  Json s = Json::object();
  for (const auto& [name, a] : strata) s[name] = stratum_json(a);
  return {{"strata", s}, {"pooled", stratum_json(pooled)}, {"mean_rho", mean_rho ? Json(*mean_rho) : Json()}};
}

}  // namespace claimgate::judge
