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
#include <memory>
#include <string>
#include <string_view>

namespace claimgate::semantics {

// Exhaustive operations enumerate 2^universe assignments and 2^pieces subsets.
inline constexpr std::size_t kMaxUniverse = 16;
inline constexpr std::size_t kMaxExhaustivePieces = 8;

// Index of a propositional variable. Valid ids are < the universe size of
// the evidence set the atom appears in.
struct Atom {
  std::uint8_t id = 0;
  friend bool operator==(Atom, Atom) = default;
};

// Immutable propositional formula over {true, false, atom, not, and, or}.
// Copies share structure; a Formula is cheap to pass by value.
class Formula {
 public:
  enum class Kind : std::uint8_t { kTrue, kFalse, kAtom, kNot, kAnd, kOr };

  Formula();  // true

  static Formula top();
  static Formula bottom();
  static Formula atom(Atom a);
  static Formula atom(unsigned id) { return atom(Atom{static_cast<std::uint8_t>(id)}); }
  static Formula literal(unsigned id, bool positive);
  static Formula negation(const Formula& f);
  static Formula conjunction(const Formula& lhs, const Formula& rhs);
  static Formula disjunction(const Formula& lhs, const Formula& rhs);

  Kind kind() const;
  Atom atom_id() const;        // kAtom only
  const Formula& operand() const;  // kNot only
  const Formula& lhs() const;      // kAnd / kOr
  const Formula& rhs() const;      // kAnd / kOr

  // Smallest universe containing every atom (0 for atom-free formulas).
  std::size_t min_universe() const;
  std::size_t depth() const;

  // Direct recursive evaluation. Bit i of `assignment` is the value of atom i.
  bool evaluate(std::uint32_t assignment) const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

inline Formula operator!(const Formula& f) { return Formula::negation(f); }
inline Formula operator&(const Formula& a, const Formula& b) { return Formula::conjunction(a, b); }
inline Formula operator|(const Formula& a, const Formula& b) { return Formula::disjunction(a, b); }

// Prefix notation used in every serialized artifact:
//   true | false | p<N> | (not F) | (and F G) | (or F G)
// Atoms are numbered from 0; operators are strictly unary/binary.
std::string to_prefix(const Formula& f);
Formula parse_prefix(std::string_view text);

}  // namespace claimgate::semantics
