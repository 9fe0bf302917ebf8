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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "claimgate/graphgen/graph.hpp"
#include "claimgate/graphgen/source.hpp"

namespace claimgate::eval {

enum class Label { kFeasible, kInfeasible };
const char* to_string(Label l);
Label label_from_string(const std::string& s);

enum class ClaimClass { kStandardPos, kStandardNeg, kAdvNeg, kRephrasedNeg };
inline constexpr std::size_t kClaimClassCount = 4;
const char* to_string(ClaimClass c);  // standard_pos, standard_neg, adv_neg, rephrased_neg
ClaimClass claim_class_from_string(const std::string& s);

struct DatasetRecord {
  std::string id;
  graphgen::Domain domain = graphgen::Domain::kNli4ct;
  graphgen::Evidence evidence;
  std::string claim;
  Label gold = Label::kFeasible;
  ClaimClass claim_class = ClaimClass::kStandardPos;
  std::optional<graphgen::ReasoningGraph> graph;

  // {"id", "domain", "evidence", "claim", "gold_label", "claim_class", "graph"?}
  Json to_json() const;
  // Rejects adversarial or rephrased negatives not labelled infeasible,
  // standard classes whose label disagrees with the class, and evidence
  // shapes that do not match the domain.
  static DatasetRecord from_json(const Json& j, const std::filesystem::path& base_dir = {});
};

struct Dataset {
  std::vector<DatasetRecord> records;
  std::array<std::size_t, kClaimClassCount> class_counts{};
  std::string hash;  // SHA-256 of the file bytes

  std::size_t count(ClaimClass c) const { return class_counts[static_cast<std::size_t>(c)]; }
  Json counts_json() const;
};

// Errors: schema-violation naming the line; duplicate record ids.
Dataset load_dataset(const std::filesystem::path& path);

void write_dataset(const std::filesystem::path& path, const std::vector<DatasetRecord>& records);

}  // namespace claimgate::eval
