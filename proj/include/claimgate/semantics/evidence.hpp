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
#include <string>
#include <vector>

#include "claimgate/semantics/formula.hpp"

namespace claimgate::semantics {

struct EvidencePiece {
  std::string id;
  Formula formula;
};

// Ordered evidence pieces over a declared atom universe. Construction checks
// id uniqueness, the universe cap, and that every atom lies in the universe.
class EvidenceSet {
 public:
  EvidenceSet() = default;
  EvidenceSet(std::vector<EvidencePiece> pieces, std::size_t universe_size);

  // Ids default to e1..eN; the universe is the smallest that fits.
  static EvidenceSet of(std::vector<Formula> formulas);
  static EvidenceSet of(std::vector<Formula> formulas, std::size_t universe_size);

  const std::vector<EvidencePiece>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }
  std::size_t universe_size() const { return universe_size_; }

 private:
  std::vector<EvidencePiece> pieces_;
  std::size_t universe_size_ = 0;
};

// Constraint i of the claim is constraints[i]. An empty claim is allowed:
// CWA accepts it vacuously, and OWA accepts it whenever the evidence is
// consistent.
struct SymbolicClaim {
  std::vector<Formula> constraints;

  std::size_t size() const { return constraints.size(); }
  bool empty() const { return constraints.empty(); }
  std::size_t min_universe() const;
};

enum class Verdict { kAccept, kReject };

enum class Regime {
  kSingleConstraintInfeasible,
  kCompositionallyInfeasible,
  kFullySupported,
  kOther,
};

inline constexpr Regime kAllRegimes[] = {
    Regime::kSingleConstraintInfeasible,
    Regime::kCompositionallyInfeasible,
    Regime::kFullySupported,
    Regime::kOther,
};

const char* to_string(Verdict v);
const char* to_string(Regime r);
Regime regime_from_string(const std::string& name);

}  // namespace claimgate::semantics
