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

#include "claimgate/semantics/formula.hpp"

#include <algorithm>
#include <cctype>

#include "claimgate/common/error.hpp"

namespace claimgate::semantics {

struct Formula::Node {
  Kind kind;
  Atom atom;
  Formula lhs;
  Formula rhs;
  std::size_t universe;
  std::size_t depth;
};

Formula::Formula() : Formula(top()) {}

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula Formula::top() {
  static const Formula t(std::shared_ptr<const Node>(
      new Node{Kind::kTrue, {}, Formula(nullptr), Formula(nullptr), 0, 1}));
  return t;
}

Formula Formula::bottom() {
  static const Formula f(std::shared_ptr<const Node>(
      new Node{Kind::kFalse, {}, Formula(nullptr), Formula(nullptr), 0, 1}));
  return f;
}

Formula Formula::atom(Atom a) {
  if (a.id >= kMaxUniverse) {
    throw Error(ErrorCode::kUniverseTooLarge,
                "atom p" + std::to_string(a.id) + " exceeds the " +
                    std::to_string(kMaxUniverse) + "-atom universe cap");
  }
  return Formula(std::shared_ptr<const Node>(
      new Node{Kind::kAtom, a, Formula(nullptr), Formula(nullptr),
               static_cast<std::size_t>(a.id) + 1, 1}));
}

Formula Formula::literal(unsigned id, bool positive) {
  Formula a = atom(id);
  return positive ? a : negation(a);
}

Formula Formula::negation(const Formula& f) {
  return Formula(std::shared_ptr<const Node>(
      new Node{Kind::kNot, {}, f, Formula(nullptr), f.min_universe(), f.depth() + 1}));
}

Formula Formula::conjunction(const Formula& lhs, const Formula& rhs) {
  return Formula(std::shared_ptr<const Node>(
      new Node{Kind::kAnd, {}, lhs, rhs, std::max(lhs.min_universe(), rhs.min_universe()),
               std::max(lhs.depth(), rhs.depth()) + 1}));
}

Formula Formula::disjunction(const Formula& lhs, const Formula& rhs) {
  return Formula(std::shared_ptr<const Node>(
      new Node{Kind::kOr, {}, lhs, rhs, std::max(lhs.min_universe(), rhs.min_universe()),
               std::max(lhs.depth(), rhs.depth()) + 1}));
}

Formula::Kind Formula::kind() const { return node_->kind; }
Atom Formula::atom_id() const { return node_->atom; }
const Formula& Formula::operand() const { return node_->lhs; }
const Formula& Formula::lhs() const { return node_->lhs; }
const Formula& Formula::rhs() const { return node_->rhs; }
std::size_t Formula::min_universe() const { return node_->universe; }
std::size_t Formula::depth() const { return node_->depth; }

bool Formula::evaluate(std::uint32_t assignment) const {
  switch (node_->kind) {
    case Kind::kTrue: return true;
    case Kind::kFalse: return false;
    case Kind::kAtom: return (assignment >> node_->atom.id) & 1u;
    case Kind::kNot: return !node_->lhs.evaluate(assignment);
    case Kind::kAnd: return node_->lhs.evaluate(assignment) && node_->rhs.evaluate(assignment);
    case Kind::kOr: return node_->lhs.evaluate(assignment) || node_->rhs.evaluate(assignment);
  }
  return false;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::kTrue:
    case Formula::Kind::kFalse: return true;
    case Formula::Kind::kAtom: return a.atom_id() == b.atom_id();
    case Formula::Kind::kNot: return a.operand() == b.operand();
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

namespace {

void write_prefix(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::kTrue: out += "true"; return;
    case Formula::Kind::kFalse: out += "false"; return;
    case Formula::Kind::kAtom:
      out += 'p';
      out += std::to_string(f.atom_id().id);
      return;
    case Formula::Kind::kNot:
      out += "(not ";
      write_prefix(f.operand(), out);
      out += ')';
      return;
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr:
      out += f.kind() == Formula::Kind::kAnd ? "(and " : "(or ";
      write_prefix(f.lhs(), out);
      out += ' ';
      write_prefix(f.rhs(), out);
      out += ')';
      return;
  }
}

class PrefixParser {
 public:
  explicit PrefixParser(std::string_view text) : text_(text) {}

  Formula parse_all() {
    Formula f = parse();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::kFormulaSyntax, "formula \"" + std::string(text_) + "\" at offset " +
                                               std::to_string(pos_) + ": " + why);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view word() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      ++pos_;
    }
    if (start == pos_) fail("expected a token");
    return text_.substr(start, pos_ - start);
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Formula parse() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == '(') {
      ++pos_;
      std::string_view op = word();
      Formula result;
      if (op == "not") {
        result = Formula::negation(parse());
      } else if (op == "and" || op == "or") {
        Formula lhs = parse();
        Formula rhs = parse();
        result = op == "and" ? Formula::conjunction(lhs, rhs) : Formula::disjunction(lhs, rhs);
      } else {
        fail("unknown operator '" + std::string(op) + "'");
      }
      expect(')');
      return result;
    }
    std::string_view w = word();
    if (w == "true") return Formula::top();
    if (w == "false") return Formula::bottom();
    if (w.size() >= 2 && w[0] == 'p' &&
        std::all_of(w.begin() + 1, w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      if (w.size() > 4) fail("atom index too large");
      unsigned id = static_cast<unsigned>(std::stoul(std::string(w.substr(1))));
      if (id >= kMaxUniverse) {
        throw Error(ErrorCode::kUniverseTooLarge,
                    "atom " + std::string(w) + " exceeds the 16-atom universe cap");
      }
      return Formula::atom(id);
    }
    fail("unknown token '" + std::string(w) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_prefix(const Formula& f) {
  std::string out;
  write_prefix(f, out);
  return out;
}

Formula parse_prefix(std::string_view text) { return PrefixParser(text).parse_all(); }

}  // namespace claimgate::semantics
