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

#include "claimgate/semantics/truth_table.hpp"

#include <stdexcept>

#include "claimgate/common/error.hpp"

namespace claimgate::semantics {
namespace {

constexpr std::uint64_t kAtomPatterns[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

std::size_t word_count(std::size_t universe) {
  return universe <= 6 ? 1 : (std::size_t{1} << (universe - 6));
}

std::uint64_t last_word_mask(std::size_t universe) {
  if (universe >= 6) return ~std::uint64_t{0};
  return (std::uint64_t{1} << (std::size_t{1} << universe)) - 1;
}

void check_universe(std::size_t universe) {
  if (universe > kMaxUniverse) {
    throw Error(ErrorCode::kUniverseTooLarge, "universe of " + std::to_string(universe) +
                                                  " atoms exceeds the cap of " +
                                                  std::to_string(kMaxUniverse));
  }
}

}  // namespace

TruthTable::TruthTable(std::size_t universe, bool fill)
    : universe_(universe), words_((check_universe(universe), word_count(universe)),
                                  fill ? ~std::uint64_t{0} : 0) {
  clear_padding();
}

void TruthTable::clear_padding() { words_.back() &= last_word_mask(universe_); }

TruthTable TruthTable::atom(std::size_t id, std::size_t universe) {
  if (id >= universe) {
    throw Error(ErrorCode::kAtomOutOfRange, "atom p" + std::to_string(id) +
                                                " outside universe of " +
                                                std::to_string(universe));
  }
  TruthTable t(universe);
  if (id < 6) {
    for (auto& w : t.words_) w = kAtomPatterns[id];
  } else {
    for (std::size_t w = 0; w < t.words_.size(); ++w) {
      t.words_[w] = ((w >> (id - 6)) & 1u) ? ~std::uint64_t{0} : 0;
    }
  }
  t.clear_padding();
  return t;
}

TruthTable TruthTable::of(const Formula& f, std::size_t universe, const TruthTableKernels& k) {
  switch (f.kind()) {
    case Formula::Kind::kTrue: return TruthTable(universe, true);
    case Formula::Kind::kFalse: return TruthTable(universe, false);
    case Formula::Kind::kAtom: return atom(f.atom_id().id, universe);
    case Formula::Kind::kNot: {
      TruthTable t = of(f.operand(), universe, k);
      t.complement(k);
      return t;
    }
    case Formula::Kind::kAnd: {
      TruthTable t = of(f.lhs(), universe, k);
      t.intersect(of(f.rhs(), universe, k), k);
      return t;
    }
    case Formula::Kind::kOr: {
      TruthTable t = of(f.lhs(), universe, k);
      t.unite(of(f.rhs(), universe, k), k);
      return t;
    }
  }
  return TruthTable(universe);
}

bool TruthTable::test(std::uint32_t assignment) const {
  return (words_[assignment >> 6] >> (assignment & 63u)) & 1u;
}

namespace {

void require_same_universe(const TruthTable& a, const TruthTable& b) {
  if (a.universe() != b.universe()) {
    throw std::invalid_argument("truth tables over different universes");
  }
}

}  // namespace

void TruthTable::intersect(const TruthTable& other, const TruthTableKernels& k) {
  require_same_universe(*this, other);
  k.bit_and(words_, other.words_);
}

void TruthTable::unite(const TruthTable& other, const TruthTableKernels& k) {
  require_same_universe(*this, other);
  k.bit_or(words_, other.words_);
}

void TruthTable::complement(const TruthTableKernels& k) {
  k.bit_not(words_);
  clear_padding();
}

bool TruthTable::implies(const TruthTable& other, const TruthTableKernels& k) const {
  require_same_universe(*this, other);
  return !k.any_andnot(words_, other.words_);
}

bool TruthTable::satisfiable(const TruthTableKernels& k) const { return k.any_set(words_); }

}  // namespace claimgate::semantics
