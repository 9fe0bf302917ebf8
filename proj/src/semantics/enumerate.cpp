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

#include "claimgate/semantics/enumerate.hpp"

#include "claimgate/common/error.hpp"

namespace claimgate::semantics {
namespace {

// Calls `visit` with every non-empty combination of indices [0, n) of size up
// to `max_size`, ordered by size and then lexicographically.
template <typename Visit>
void for_each_combination(std::size_t n, std::size_t max_size, Visit visit) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 1; k <= std::min(n, max_size); ++k) {
    idx.resize(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      visit(idx);
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

void check_bounds(const EnumerationBounds& b) {
  if (b.atoms < 1 || b.atoms > 4 || b.max_pieces < 1 || b.max_pieces > 4 ||
      b.max_constraints < 1 || b.max_constraints > 3) {
    throw Error(ErrorCode::kBoundsExceeded,
                "enumeration bounds must satisfy 1 <= atoms <= 4, 1 <= pieces <= 4, "
                "1 <= constraints <= 3 (got " +
                    std::to_string(b.atoms) + ", " + std::to_string(b.max_pieces) + ", " +
                    std::to_string(b.max_constraints) + ")");
  }
}

}  // namespace

std::vector<Formula> literal_pool(std::size_t atoms) {
  std::vector<Formula> out;
  for (unsigned i = 0; i < atoms; ++i) {
    out.push_back(Formula::literal(i, true));
    out.push_back(Formula::literal(i, false));
  }
  return out;
}

std::vector<Formula> evidence_pool(std::size_t atoms) {
  std::vector<Formula> out = literal_pool(atoms);
  for (unsigned i = 0; i < atoms; ++i) {
    for (unsigned j = i + 1; j < atoms; ++j) {
      for (bool si : {true, false}) {
        for (bool sj : {true, false}) {
          out.push_back(Formula::literal(i, si) | Formula::literal(j, sj));
        }
      }
    }
  }
  return out;
}

InstanceStream::InstanceStream(const EnumerationBounds& bounds) : bounds_(bounds) {
  check_bounds(bounds_);
  auto pool = evidence_pool(bounds_.atoms);
  for_each_combination(pool.size(), bounds_.max_pieces, [&](const auto& idx) {
    std::vector<Formula> chosen;
    for (auto i : idx) chosen.push_back(pool[i]);
    evidence_sets_.push_back(EvidenceSet::of(std::move(chosen), bounds_.atoms));
  });
  auto cpool = bounds_.claim_pool == ClaimPool::kLiterals ? literal_pool(bounds_.atoms) : pool;
  for_each_combination(cpool.size(), bounds_.max_constraints, [&](const auto& idx) {
    SymbolicClaim claim;
    for (auto i : idx) claim.constraints.push_back(cpool[i]);
    claims_.push_back(std::move(claim));
  });
}

std::optional<Instance> InstanceStream::next() {
  if (cursor_ >= size()) return std::nullopt;
  std::size_t e = cursor_ / claims_.size();
  std::size_t c = cursor_ % claims_.size();
  ++cursor_;
  return Instance{claims_[c], evidence_sets_[e]};
}

Json instance_to_json(const Instance& instance, std::optional<Regime> tag) {
  Json pieces = Json::array();
  for (const auto& p : instance.evidence.pieces()) {
    pieces.push_back({{"id", p.id}, {"formula", to_prefix(p.formula)}});
  }
  Json constraints = Json::array();
  for (const auto& c : instance.claim.constraints) constraints.push_back(to_prefix(c));
  Json j = {{"atoms", instance.evidence.universe_size()},
            {"pieces", std::move(pieces)},
            {"constraints", std::move(constraints)}};
  if (tag) j["tag"] = to_string(*tag);
  return j;
}

Instance instance_from_json(const Json& j) {
  try {
    std::vector<EvidencePiece> pieces;
    for (const auto& p : j.at("pieces")) {
      pieces.push_back({p.at("id").get<std::string>(),
                        parse_prefix(p.at("formula").get<std::string>())});
    }
    SymbolicClaim claim;
    for (const auto& c : j.at("constraints")) {
      claim.constraints.push_back(parse_prefix(c.get<std::string>()));
    }
    auto atoms = j.at("atoms").get<std::size_t>();
    if (claim.min_universe() > atoms) {
      throw Error(ErrorCode::kAtomOutOfRange, "claim uses atoms outside a " +
                                                  std::to_string(atoms) + "-atom universe");
    }
    return Instance{std::move(claim), EvidenceSet(std::move(pieces), atoms)};
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kSchemaViolation, std::string("instance JSON: ") + e.what());
  }
}

}  // namespace claimgate::semantics
