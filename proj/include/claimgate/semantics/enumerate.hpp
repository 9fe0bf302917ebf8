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
#include <optional>
#include <vector>

#include "claimgate/common/io.hpp"
#include "claimgate/semantics/evidence.hpp"

namespace claimgate::semantics {

enum class ClaimPool {
  kLiterals,            // constraints are single literals
  kLiteralsAndClauses,  // constraints draw from the same pool as evidence
};

struct EnumerationBounds {
  std::size_t atoms = 4;            // <= 4
  std::size_t max_pieces = 4;       // <= 4
  std::size_t max_constraints = 3;  // <= 3
  ClaimPool claim_pool = ClaimPool::kLiterals;
};

struct Instance {
  SymbolicClaim claim;
  EvidenceSet evidence;
};

// Literals first (p0, (not p0), p1, ...), then every two-literal clause over
// distinct atoms i < j in the sign order ++, +-, -+, --.
std::vector<Formula> literal_pool(std::size_t atoms);
std::vector<Formula> evidence_pool(std::size_t atoms);

// Deterministic, duplicate-free enumeration. Evidence sets are the non-empty
// combinations of the evidence pool up to max_pieces, in combination order;
// for each evidence set every claim (non-empty combination of the claim pool
// up to max_constraints) is produced once. Instances sharing an evidence set
// are adjacent, so callers can compile evidence once per group.
class InstanceStream {
 public:
  explicit InstanceStream(const EnumerationBounds& bounds);

  const EnumerationBounds& bounds() const { return bounds_; }
  const std::vector<EvidenceSet>& evidence_sets() const { return evidence_sets_; }
  const std::vector<SymbolicClaim>& claims() const { return claims_; }
  std::size_t size() const { return evidence_sets_.size() * claims_.size(); }

  std::optional<Instance> next();
  void reset() { cursor_ = 0; }

 private:
  EnumerationBounds bounds_;
  std::vector<EvidenceSet> evidence_sets_;
  std::vector<SymbolicClaim> claims_;
  std::size_t cursor_ = 0;
};

// {"atoms": n, "pieces": [{"id", "formula"}], "constraints": [...], "tag"}
// Formulas use prefix notation; "tag" is written when given and ignored on read.
Json instance_to_json(const Instance& instance, std::optional<Regime> tag = std::nullopt);
Instance instance_from_json(const Json& j);

}  // namespace claimgate::semantics
