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

#include "claimgate/eval/dataset.hpp"

#include <set>

#include "claimgate/common/error.hpp"
#include "claimgate/common/io.hpp"

namespace claimgate::eval {

namespace fs = std::filesystem;

const char* to_string(Label l) { return l == Label::kFeasible ? "feasible" : "infeasible"; }

Label label_from_string(const std::string& s) {
  if (s == "feasible") return Label::kFeasible;
  if (s == "infeasible") return Label::kInfeasible;
  throw Error(ErrorCode::kSchemaViolation, "gold_label must be feasible or infeasible, got '" + s + "'");
}

const char* to_string(ClaimClass c) {
  switch (c) {
    case ClaimClass::kStandardPos: return "standard_pos";
    case ClaimClass::kStandardNeg: return "standard_neg";
    case ClaimClass::kAdvNeg: return "adv_neg";
    case ClaimClass::kRephrasedNeg: return "rephrased_neg";
  }
  return "standard_pos";
}

ClaimClass claim_class_from_string(const std::string& s) {
  if (s == "standard_pos") return ClaimClass::kStandardPos;
  if (s == "standard_neg") return ClaimClass::kStandardNeg;
  if (s == "adv_neg") return ClaimClass::kAdvNeg;
  if (s == "rephrased_neg") return ClaimClass::kRephrasedNeg;
  throw Error(ErrorCode::kSchemaViolation, "unknown claim_class '" + s + "'");
}

Json DatasetRecord::to_json() const {
  Json j = {{"id", id},
            {"domain", graphgen::to_string(domain)},
            {"evidence", graphgen::evidence_to_json(evidence)},
            {"claim", claim},
            {"gold_label", to_string(gold)},
            {"claim_class", to_string(claim_class)}};
  if (graph) j["graph"] = graph->to_json();
  return j;
}

DatasetRecord DatasetRecord::from_json(const Json& j, const fs::path& base_dir) {
  DatasetRecord r;
  try {
    r.id = j.at("id").get<std::string>();
    r.domain = graphgen::domain_from_string(j.at("domain").get<std::string>());
    r.evidence = graphgen::evidence_from_json(j.at("evidence"), base_dir);
    r.claim = j.at("claim").get<std::string>();
    r.gold = label_from_string(j.at("gold_label").get<std::string>());
    r.claim_class = claim_class_from_string(j.at("claim_class").get<std::string>());
    if (j.contains("graph") && !j["graph"].is_null()) {
      r.graph = graphgen::ReasoningGraph::from_json(j["graph"]);
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kSchemaViolation, std::string("dataset record: ") + e.what());
  }
  if (r.id.empty()) throw Error(ErrorCode::kSchemaViolation, "record id is empty");
  if (r.claim.empty()) throw Error(ErrorCode::kSchemaViolation, "record " + r.id + " has an empty claim");
  if (graphgen::evidence_domain(r.evidence) != r.domain) {
    throw Error(ErrorCode::kSchemaViolation, "record " + r.id + ": evidence kind does not match domain");
  }
  const Label expected =
      r.claim_class == ClaimClass::kStandardPos ? Label::kFeasible : Label::kInfeasible;
  if (r.gold != expected) {
    throw Error(ErrorCode::kSchemaViolation, "record " + r.id + ": " + to_string(r.claim_class) +
                                                 " must carry gold_label " + to_string(expected));
  }
  return r;
}

Json Dataset::counts_json() const {
  Json j = Json::object();
  for (std::size_t c = 0; c < kClaimClassCount; ++c) {
    j[to_string(static_cast<ClaimClass>(c))] = class_counts[c];
  }
  return j;
}

Dataset load_dataset(const fs::path& path) {
  Dataset d;
  d.hash = sha256_hex(read_file(path));
  const fs::path base = path.parent_path();
  std::set<std::string> ids;
  for_each_jsonl(path, [&](std::size_t line, const Json& j) {
    try {
      auto r = DatasetRecord::from_json(j, base);
      if (!ids.insert(r.id).second) {
        throw Error(ErrorCode::kSchemaViolation, "duplicate record id " + r.id);
      }
      ++d.class_counts[static_cast<std::size_t>(r.claim_class)];
      d.records.push_back(std::move(r));
    } catch (const Error& e) {
      throw Error(ErrorCode::kSchemaViolation,
                  path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
  });
  return d;
}

void write_dataset(const fs::path& path, const std::vector<DatasetRecord>& records) {
  std::vector<Json> rows;
  rows.reserve(records.size());
  for (const auto& r : records) rows.push_back(r.to_json());
  write_jsonl(path, rows);
}

}  // namespace claimgate::eval
