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

#include <gtest/gtest.h>

#include <set>

#include "claimgate/common/error.hpp"
#include "claimgate/semantics/enumerate.hpp"
#include "claimgate/semantics/propositions.hpp"
#include "semantics/oracle.hpp"

namespace claimgate::semantics {
namespace {

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Independent count: evidence pool of 2n literals plus 4*C(n,2) clauses.
std::uint64_t expected_count(std::uint64_t n, std::uint64_t p, std::uint64_t c) {
  std::uint64_t pool = 2 * n + 4 * choose(n, 2);
  std::uint64_t ev = 0, cl = 0;
  for (std::uint64_t k = 1; k <= p; ++k) ev += choose(pool, k);
  for (std::uint64_t k = 1; k <= c; ++k) cl += choose(2 * n, k);
  return ev * cl;
}

std::vector<Instance> collect(InstanceStream& s) {
  std::vector<Instance> out;
  while (auto i = s.next()) out.push_back(std::move(*i));
  return out;
}

TEST(Enumerate, MinimalUniverse) {
  InstanceStream s({1, 1, 1});
  auto all = collect(s);
  ASSERT_EQ(all.size(), 4u);
  std::set<std::string> seen;
  for (const auto& i : all) seen.insert(instance_to_json(i).dump());
  EXPECT_TRUE(seen.count(R"j({"atoms":1,"pieces":[{"id":"e1","formula":"p0"}],"constraints":["p0"]})j"));
  EXPECT_TRUE(seen.count(
      R"j({"atoms":1,"pieces":[{"id":"e1","formula":"(not p0)"}],"constraints":["p0"]})j"));
}

TEST(Enumerate, CountMatchesCombinatorialOracle) {
  EXPECT_EQ(expected_count(2, 2, 2), 360u);
  EXPECT_EQ(expected_count(4, 4, 3), 3813216u);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t p = 1; p <= 3; ++p) {
      for (std::size_t c = 1; c <= 3; ++c) {
        InstanceStream s({n, p, c});
        EXPECT_EQ(s.size(), expected_count(n, p, c)) << n << p << c;
      }
    }
  }
  InstanceStream s({2, 2, 2});
  EXPECT_EQ(collect(s).size(), 360u);
  EXPECT_EQ(InstanceStream({4, 4, 3}).size(), 3813216u);
}

TEST(Enumerate, DuplicateFreeDeterministicRestartable) {
  InstanceStream s({2, 2, 2});
  auto first = collect(s);
  std::set<std::string> keys;
  for (const auto& i : first) {
    std::set<std::string> pieces, cons;
    for (const auto& p : i.evidence.pieces()) pieces.insert(to_prefix(p.formula));
    for (const auto& c : i.claim.constraints) cons.insert(to_prefix(c));
    ASSERT_EQ(pieces.size(), i.evidence.size());
    ASSERT_EQ(cons.size(), i.claim.size());
    std::string key;
    for (const auto& p : pieces) key += p + ",";
    key += "|";
    for (const auto& c : cons) key += c + ",";
    ASSERT_TRUE(keys.insert(key).second) << key;
  }
  s.reset();
  auto second = collect(s);
  ASSERT_EQ(first.size(), second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    ASSERT_EQ(instance_to_json(first[i]), instance_to_json(second[i]));
  }
}

TEST(Enumerate, CoversEveryRegime) {
  InstanceStream s({2, 2, 2});
  std::set<Regime> tags;
  for (const auto& i : collect(s)) tags.insert(classify_regime(i.claim, i.evidence));
  EXPECT_TRUE(tags.count(Regime::kCompositionallyInfeasible));
  EXPECT_EQ(tags.size(), 4u);
}

TEST(Enumerate, BoundsExceeded) {
  for (EnumerationBounds b : {EnumerationBounds{5, 1, 1}, EnumerationBounds{1, 5, 1},
                              EnumerationBounds{1, 1, 4}, EnumerationBounds{0, 1, 1}}) {
    try {
      InstanceStream s(b);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kBoundsExceeded);
    }
  }
}

TEST(Enumerate, PoolsAreOrderedAndSized) {
  auto pool = evidence_pool(3);
  ASSERT_EQ(pool.size(), 18u);
  EXPECT_EQ(to_prefix(pool[0]), "p0");
  EXPECT_EQ(to_prefix(pool[1]), "(not p0)");
  EXPECT_EQ(to_prefix(pool[6]), "(or p0 p1)");
  EXPECT_EQ(to_prefix(pool[9]), "(or (not p0) (not p1))");
  EXPECT_EQ(literal_pool(3).size(), 6u);
}

TEST(InstanceJson, RoundTripWithTag) {
  Instance inst{SymbolicClaim{{Formula::atom(0), Formula::atom(1)}},
                EvidenceSet::of({Formula::atom(0), !Formula::atom(0) | !Formula::atom(1)}, 2)};
  auto j = instance_to_json(inst, Regime::kCompositionallyInfeasible);
  EXPECT_EQ(j.dump(),
            R"j({"atoms":2,"pieces":[{"id":"e1","formula":"p0"},{"id":"e2","formula":"(or (not p0) (not p1))"}],"constraints":["p0","p1"],"tag":"compositionally_infeasible"})j");
  auto back = instance_from_json(j);
  EXPECT_EQ(instance_to_json(back, Regime::kCompositionallyInfeasible), j);
  EXPECT_THROW(instance_from_json(Json{{"atoms", 1}}), Error);
  EXPECT_THROW(instance_from_json(Json::parse(R"j({"atoms":1,"pieces":[],"constraints":["p3"]})j")),
               Error);
}

TEST(Propositions, HandInstanceConfirmsSeparation) {
  std::vector<Instance> one{
      {SymbolicClaim{{Formula::atom(0), Formula::atom(1)}},
       EvidenceSet::of({Formula::atom(0), !Formula::atom(0) | !Formula::atom(1)}, 2)}};
  auto r = check_propositions(one);
  EXPECT_EQ(r.instances, 1u);
  EXPECT_EQ(r.regime_count(Regime::kCompositionallyInfeasible), 1u);
  EXPECT_EQ(r.compositional_separation.checked, 1u);
  EXPECT_EQ(r.compositional_separation.violations, 0u);
  EXPECT_TRUE(r.ok());
}

TEST(Propositions, SmallSweepsHaveNoViolations) {
  for (EnumerationBounds b : {EnumerationBounds{2, 2, 2}, EnumerationBounds{3, 3, 2},
                              EnumerationBounds{3, 2, 2, ClaimPool::kLiteralsAndClauses}}) {
    InstanceStream s(b);
    auto r = check_propositions(s);
    EXPECT_EQ(r.instances, s.size());
    EXPECT_TRUE(r.ok()) << r.to_text();
    EXPECT_GT(r.single_constraint_equivalence.checked, 0u);
    EXPECT_GT(r.compositional_separation.checked, 0u);
    EXPECT_GT(r.inconsistent_evidence, 0u);
    std::uint64_t tagged = 0;
    for (Regime g : kAllRegimes) tagged += r.regime_count(g);
    EXPECT_EQ(tagged, r.instances);
  }
}

// The propositions presuppose satisfiable evidence. With E unsatisfiable both
// operators follow their definitions: everything is entailed, so CWA accepts
// and OWA rejects every claim; the OWA=>CWA ordering then fails by design.
TEST(Propositions, InconsistentEvidenceBehavesPerDefinition) {
  auto a = Formula::atom(0), b = Formula::atom(1);
  auto ev = EvidenceSet::of({a, !b, b}, 2);
  for (auto claim : {SymbolicClaim{{a}}, SymbolicClaim{{a, b}}, SymbolicClaim{{!a}}}) {
    EXPECT_EQ(cwa_verdict(claim, ev), Verdict::kAccept);
    EXPECT_EQ(owa_verdict(claim, ev), Verdict::kReject);
  }
  std::vector<Instance> inst{{SymbolicClaim{{a}}, ev}};
  auto r = check_propositions(inst);
  EXPECT_EQ(r.inconsistent_evidence, 1u);
  EXPECT_EQ(r.owa_reject_implies_cwa_reject.checked, 0u);
  EXPECT_TRUE(r.ok());
}

TEST(Propositions, ReportJson) {
  InstanceStream s({1, 1, 1});
  auto j = check_propositions(s).to_json();
  EXPECT_EQ(j["instances"], 4);
  EXPECT_EQ(j["total_violations"], 0);
  EXPECT_TRUE(j["regimes"].contains("fully_supported"));
  EXPECT_TRUE(j["counterexamples"].empty());
}

}  // namespace
}  // namespace claimgate::semantics
