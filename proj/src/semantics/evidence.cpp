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

#include "claimgate/semantics/evidence.hpp"

#include <algorithm>
#include <unordered_set>

#include "claimgate/common/error.hpp"

namespace claimgate::semantics {

EvidenceSet::EvidenceSet(std::vector<EvidencePiece> pieces, std::size_t universe_size)
    : pieces_(std::move(pieces)), universe_size_(universe_size) {
  if (universe_size_ > kMaxUniverse) {
    throw Error(ErrorCode::kUniverseTooLarge,
                "universe of " + std::to_string(universe_size_) + " atoms exceeds the cap of " +
                    std::to_string(kMaxUniverse));
  }
  std::unordered_set<std::string> seen;
  for (const auto& p : pieces_) {
    if (!seen.insert(p.id).second) {
      throw Error(ErrorCode::kSchemaViolation, "duplicate evidence id '" + p.id + "'");
    }
    if (p.formula.min_universe() > universe_size_) {
      throw Error(ErrorCode::kAtomOutOfRange, "evidence '" + p.id + "' uses atoms outside a " +
                                                  std::to_string(universe_size_) +
                                                  "-atom universe");
    }
  }
}

EvidenceSet EvidenceSet::of(std::vector<Formula> formulas) {
  std::size_t universe = 0;
  for (const auto& f : formulas) universe = std::max(universe, f.min_universe());
  return of(std::move(formulas), universe);
}

EvidenceSet EvidenceSet::of(std::vector<Formula> formulas, std::size_t universe_size) {
  std::vector<EvidencePiece> pieces;
  pieces.reserve(formulas.size());
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    pieces.push_back({"e" + std::to_string(i + 1), std::move(formulas[i])});
  }
  return EvidenceSet(std::move(pieces), universe_size);
}

std::size_t SymbolicClaim::min_universe() const {
  std::size_t u = 0;
  for (const auto& c : constraints) u = std::max(u, c.min_universe());
  return u;
}

const char* to_string(Verdict v) { return v == Verdict::kAccept ? "accept" : "reject"; }

const char* to_string(Regime r) {
  switch (r) {
    case Regime::kSingleConstraintInfeasible: return "single_constraint_infeasible";
    case Regime::kCompositionallyInfeasible: return "compositionally_infeasible";
    case Regime::kFullySupported: return "fully_supported";
    case Regime::kOther: return "other";
  }
  return "other";
}

Regime regime_from_string(const std::string& name) {
  for (Regime r : kAllRegimes) {
    if (name == to_string(r)) return r;
  }
  throw Error(ErrorCode::kSchemaViolation, "unknown regime tag '" + name + "'");
}

}  // namespace claimgate::semantics
