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

#include "claimgate/semantics/verification.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>

#include "claimgate/common/error.hpp"

namespace claimgate::semantics {
namespace {

// Subset masks over `m` pieces ordered by size, then lexicographically by
// their sorted index sequence. Witness search walks this order.
const std::vector<std::uint32_t>& witness_order(std::size_t m) {
  static const auto orders = [] {
    std::array<std::vector<std::uint32_t>, kMaxExhaustivePieces + 1> all;
    for (std::size_t n = 0; n <= kMaxExhaustivePieces; ++n) {
      auto& order = all[n];
      std::vector<std::uint32_t> idx;
      for (std::size_t k = 0; k <= n; ++k) {
        idx.assign(k, 0);
        for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<std::uint32_t>(i);
        for (;;) {
          std::uint32_t mask = 0;
          for (auto i : idx) mask |= 1u << i;
          order.push_back(mask);
          // Advance to the next k-combination in lexicographic order.
          std::size_t pos = k;
          while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
          if (pos == 0) break;
          ++idx[pos - 1];
          for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
      }
    }
    return all;
  }();
  return orders[m];
}

void require_exhaustive(std::size_t pieces) {
  if (pieces > kMaxExhaustivePieces) {
    throw Error(ErrorCode::kEvidenceTooLarge,
                std::to_string(pieces) + " evidence pieces exceed the exhaustive-search cap of " +
                    std::to_string(kMaxExhaustivePieces));
  }
}

void require_nonempty(const SymbolicClaim& claim) {
  if (claim.empty()) throw Error(ErrorCode::kEmptyClaim, "claim has no constraints");
}

TruthTable negated(TruthTable t, const TruthTableKernels& k) {
  t.complement(k);
  return t;
}

}  // namespace

bool entails(std::span<const Formula> premises, const Formula& target, std::size_t universe) {
  const auto& k = active_kernels();
  TruthTable models(universe, true);
  for (const auto& p : premises) models.intersect(TruthTable::of(p, universe, k), k);
  return models.implies(TruthTable::of(target, universe, k), k);
}

bool entails(std::span<const Formula> premises, const Formula& target) {
  std::size_t universe = target.min_universe();
  for (const auto& p : premises) universe = std::max(universe, p.min_universe());
  return entails(premises, target, universe);
}

std::string Salience::to_string() const {
  if (!decided()) return "0";
  if (denominator_ == 1) return "1";
  return "1/" + std::to_string(denominator_);
}

CompiledEvidence::CompiledEvidence(const EvidenceSet& evidence, const TruthTableKernels& kernels)
    : source_(&evidence),
      universe_(evidence.universe_size()),
      kernels_(&kernels),
      whole_(evidence.universe_size(), true),
      subsets_(std::make_unique<Lazy>()) {
  pieces_.reserve(evidence.size());
  for (const auto& p : evidence.pieces()) {
    pieces_.push_back(TruthTable::of(p.formula, universe_, kernels));
    whole_.intersect(pieces_.back(), kernels);
  }
}

TruthTable CompiledEvidence::compile(const Formula& f) const {
  return TruthTable::of(f, universe_, *kernels_);
}

bool CompiledEvidence::consistent() const { return whole_.satisfiable(*kernels_); }

bool CompiledEvidence::whole_entails(const TruthTable& target) const {
  return whole_.implies(target, *kernels_);
}

bool CompiledEvidence::some_piece_entails(const TruthTable& target) const {
  return std::any_of(pieces_.begin(), pieces_.end(),
                     [&](const TruthTable& p) { return p.implies(target, *kernels_); });
}

const std::vector<TruthTable>& CompiledEvidence::subset_tables() const {
  require_exhaustive(pieces_.size());
  std::call_once(subsets_->once, [this] {
    auto& tables = subsets_->tables;
    std::size_t count = std::size_t{1} << pieces_.size();
    tables.reserve(count);
    tables.emplace_back(universe_, true);
    for (std::size_t mask = 1; mask < count; ++mask) {
      std::size_t low = static_cast<std::size_t>(std::countr_zero(mask));
      TruthTable t = tables[mask & (mask - 1)];
      t.intersect(pieces_[low], *kernels_);
      tables.push_back(std::move(t));
    }
  });
  return subsets_->tables;
}

bool CompiledEvidence::subset_entails(std::uint32_t mask, const TruthTable& target) const {
  return subset_tables().at(mask).implies(target, *kernels_);
}

std::optional<std::uint32_t> CompiledEvidence::minimal_witness(const TruthTable& target) const {
  const auto& tables = subset_tables();
  for (std::uint32_t mask : witness_order(pieces_.size())) {
    if (tables[mask].implies(target, *kernels_)) return mask;
  }
  return std::nullopt;
}

namespace {

Salience salience_of(const CompiledEvidence& ev, const TruthTable& constraint) {
  auto support = ev.minimal_witness(constraint);
  auto refute = ev.minimal_witness(negated(constraint, ev.kernels()));
  std::size_t best = 0;
  bool found = false;
  for (const auto& w : {support, refute}) {
    if (!w) continue;
    std::size_t k = static_cast<std::size_t>(std::popcount(*w));
    if (!found || k < best) best = k;
    found = true;
  }
  return found ? Salience::from_witness_size(best) : Salience::undecided();
}

std::size_t argmax_salience(const std::vector<Salience>& s) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] > s[best]) best = i;
  }
  return best;
}

Verdict cwa_of(const CompiledEvidence& ev, const std::vector<TruthTable>& constraints) {
  // Monotonicity: some subset entails c_i iff the whole set does.
  for (const auto& c : constraints) {
    if (!ev.whole_entails(c)) return Verdict::kReject;
  }
  return Verdict::kAccept;
}

Verdict owa_of(const CompiledEvidence& ev, const std::vector<TruthTable>& constraints) {
  TruthTable joint(ev.universe(), true);
  for (const auto& c : constraints) joint.intersect(c, ev.kernels());
  joint.complement(ev.kernels());
  return ev.whole_entails(joint) ? Verdict::kReject : Verdict::kAccept;
}

std::vector<TruthTable> compile_all(const CompiledEvidence& ev, const SymbolicClaim& claim) {
  std::vector<TruthTable> out;
  out.reserve(claim.size());
  for (const auto& c : claim.constraints) out.push_back(ev.compile(c));
  return out;
}

}  // namespace

ClaimAnalysis analyze(const CompiledEvidence& ev, const SymbolicClaim& claim,
                      const VerifierOptions& options) {
  ClaimAnalysis out;
  const auto& k = ev.kernels();
  auto tables = compile_all(ev, claim);
  out.cwa = cwa_of(ev, tables);
  out.owa = owa_of(ev, tables);
  if (claim.empty()) return out;

  out.salience.reserve(tables.size());
  for (const auto& t : tables) out.salience.push_back(salience_of(ev, t));
  std::size_t star = argmax_salience(out.salience);
  out.salient_index = star;

  const TruthTable& salient = tables[star];
  bool salient_single = ev.some_piece_entails(salient);
  out.scc = (options.salient_subset_support ? ev.whole_entails(salient) : salient_single)
                ? Verdict::kAccept
                : Verdict::kReject;

  bool other_refuted = false;
  bool others_single = true;
  for (std::size_t j = 0; j < tables.size(); ++j) {
    if (j == star) continue;
    if (ev.whole_entails(negated(tables[j], k))) other_refuted = true;
    if (!ev.some_piece_entails(tables[j])) others_single = false;
  }
  if (salient_single && other_refuted) {
    out.regime = Regime::kCompositionallyInfeasible;
  } else if (others_single && ev.some_piece_entails(negated(salient, k))) {
    out.regime = Regime::kSingleConstraintInfeasible;
  } else if (others_single && salient_single) {
    out.regime = Regime::kFullySupported;
  } else {
    out.regime = Regime::kOther;
  }
  return out;
}

Verdict cwa_verdict(const SymbolicClaim& claim, const EvidenceSet& evidence) {
  CompiledEvidence ev(evidence);
  return cwa_of(ev, compile_all(ev, claim));
}

Verdict owa_verdict(const SymbolicClaim& claim, const EvidenceSet& evidence) {
  CompiledEvidence ev(evidence);
  return owa_of(ev, compile_all(ev, claim));
}

Salience salience(std::size_t constraint_index, const SymbolicClaim& claim,
                  const EvidenceSet& evidence) {
  if (constraint_index >= claim.size()) {
    throw std::out_of_range("constraint index " + std::to_string(constraint_index) +
                            " out of range for a claim of " + std::to_string(claim.size()));
  }
  CompiledEvidence ev(evidence);
  return salience_of(ev, ev.compile(claim.constraints[constraint_index]));
}

std::size_t salient_constraint(const SymbolicClaim& claim, const EvidenceSet& evidence) {
  require_nonempty(claim);
  CompiledEvidence ev(evidence);
  std::vector<Salience> s;
  for (const auto& c : claim.constraints) s.push_back(salience_of(ev, ev.compile(c)));
  return argmax_salience(s);
}

Verdict scc_verdict(const SymbolicClaim& claim, const EvidenceSet& evidence,
                    const VerifierOptions& options) {
  require_nonempty(claim);
  CompiledEvidence ev(evidence);
  return *analyze(ev, claim, options).scc;
}

std::optional<std::vector<std::string>> minimal_witness(const Formula& target,
                                                        const EvidenceSet& evidence) {
  CompiledEvidence ev(evidence);
  auto mask = ev.minimal_witness(ev.compile(target));
  if (!mask) return std::nullopt;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < evidence.size(); ++i) {
    if ((*mask >> i) & 1u) ids.push_back(evidence.pieces()[i].id);
  }
  return ids;
}

Regime classify_regime(const SymbolicClaim& claim, const EvidenceSet& evidence) {
  require_nonempty(claim);
  CompiledEvidence ev(evidence);
  return *analyze(ev, claim).regime;
}

}  // namespace claimgate::semantics
