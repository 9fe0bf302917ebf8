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
#include <cstdint>
#include <span>
#include <vector>

#include "claimgate/semantics/formula.hpp"
#include "claimgate/semantics/kernels.hpp"

namespace claimgate::semantics {

// Set of satisfying assignments of a formula over a fixed universe, packed
// one assignment per bit (assignment j <-> bit j). Bits at positions
// >= 2^universe are always zero.
class TruthTable {
 public:
  explicit TruthTable(std::size_t universe, bool fill = false);

  static TruthTable of(const Formula& f, std::size_t universe,
                       const TruthTableKernels& kernels = active_kernels());
  static TruthTable atom(std::size_t id, std::size_t universe);

  std::size_t universe() const { return universe_; }
  std::span<const std::uint64_t> words() const { return words_; }
  bool test(std::uint32_t assignment) const;

  void intersect(const TruthTable& other, const TruthTableKernels& k = active_kernels());
  void unite(const TruthTable& other, const TruthTableKernels& k = active_kernels());
  void complement(const TruthTableKernels& k = active_kernels());

  // this ⊆ other, i.e. every model of this is a model of other.
  bool implies(const TruthTable& other, const TruthTableKernels& k = active_kernels()) const;
  bool satisfiable(const TruthTableKernels& k = active_kernels()) const;

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  void clear_padding();

  std::size_t universe_;
  std::vector<std::uint64_t> words_;
};

}  // namespace claimgate::semantics
