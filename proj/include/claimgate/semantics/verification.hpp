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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "claimgate/semantics/evidence.hpp"
#include "claimgate/semantics/truth_table.hpp"

namespace claimgate::semantics {

// Classical entailment: every model of the conjoined premises satisfies the
// target. With no premises this is a validity check.
bool entails(std::span<const Formula> premises, const Formula& target, std::size_t universe);
bool entails(std::span<const Formula> premises, const Formula& target);

// How directly the evidence decides a constraint: 1/k for the smallest
// deciding subset of size k, or 0 when no subset decides it. A constraint
// decided by the empty subset (a tautology or contradiction) scores 1.
class Salience {
 public:
  static Salience undecided() { return Salience(0); }
  static Salience from_witness_size(std::size_t k) {
    return Salience(static_cast<std::uint8_t>(k == 0 ? 1 : k));
  }

  bool decided() const { return denominator_ != 0; }
  std::size_t denominator() const { return denominator_; }
  double value() const { return decided() ? 1.0 / denominator_ : 0.0; }
  std::string to_string() const;

  friend std::strong_ordering operator<=>(Salience a, Salience b) { return a.rank() <=> b.rank(); }
  friend bool operator==(Salience a, Salience b) = default;

 private:
  explicit Salience(std::uint8_t d) : denominator_(d) {}
  int rank() const { return decided() ? 256 - denominator_ : 0; }
  std::uint8_t denominator_;
};

struct VerifierOptions {
  // When set, V_s accepts if any subset (not just one piece) entails c*.
  // Off by default; used only for sensitivity analysis.
  bool salient_subset_support = false;
};

// Evidence compiled to truth tables once and reused across many claims.
// Subset conjunctions are built lazily, so whole-set queries (CWA, OWA) work
// for any number of pieces while subset queries need <= 8 pieces.
class CompiledEvidence {
 public:
  explicit CompiledEvidence(const EvidenceSet& evidence,
                            const TruthTableKernels& kernels = active_kernels());

  const EvidenceSet& source() const { return *source_; }
  std::size_t universe() const { return universe_; }
  std::size_t size() const { return pieces_.size(); }
  const TruthTableKernels& kernels() const { return *kernels_; }

  TruthTable compile(const Formula& f) const;

  bool consistent() const;
  bool whole_entails(const TruthTable& target) const;
  bool some_piece_entails(const TruthTable& target) const;
  bool subset_entails(std::uint32_t mask, const TruthTable& target) const;

  // Bitmask of the smallest subset entailing `target`; ties go to the
  // lexicographically first index sequence.
  std::optional<std::uint32_t> minimal_witness(const TruthTable& target) const;

 private:
  const std::vector<TruthTable>& subset_tables() const;

  const EvidenceSet* source_;
  std::size_t universe_;
  const TruthTableKernels* kernels_;
  std::vector<TruthTable> pieces_;
  TruthTable whole_;
  struct Lazy {
    std::once_flag once;
    std::vector<TruthTable> tables;
  };
  std::unique_ptr<Lazy> subsets_;
};

// Everything the semantics layer concludes about one (claim, evidence) pair.
struct ClaimAnalysis {
  std::vector<Salience> salience;
  std::optional<std::size_t> salient_index;  // absent for an empty claim
  Verdict cwa = Verdict::kAccept;
  Verdict owa = Verdict::kAccept;
  std::optional<Verdict> scc;  // absent for an empty claim
  std::optional<Regime> regime;
};

ClaimAnalysis analyze(const CompiledEvidence& evidence, const SymbolicClaim& claim,
                      const VerifierOptions& options = {});

Verdict cwa_verdict(const SymbolicClaim& claim, const EvidenceSet& evidence);
Verdict owa_verdict(const SymbolicClaim& claim, const EvidenceSet& evidence);
Salience salience(std::size_t constraint_index, const SymbolicClaim& claim,
                  const EvidenceSet& evidence);
std::size_t salient_constraint(const SymbolicClaim& claim, const EvidenceSet& evidence);
Verdict scc_verdict(const SymbolicClaim& claim, const EvidenceSet& evidence,
                    const VerifierOptions& options = {});
std::optional<std::vector<std::string>> minimal_witness(const Formula& target,
                                                        const EvidenceSet& evidence);
Regime classify_regime(const SymbolicClaim& claim, const EvidenceSet& evidence);

}  // namespace claimgate::semantics
