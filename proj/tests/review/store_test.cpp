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

#include <random>

#include "claimgate/review/store.hpp"
#include "review/candidates.hpp"
#include "support/fixtures.hpp"
#include "support/temp_dir.hpp"

namespace claimgate::review {
namespace {

namespace fs = std::filesystem;
using testing::candidate_pool;
using testing_support::error_code_of;
using testing_support::TempDir;

ReviewDecision decision(const std::string& id, Decision d, std::string annotator = "a1") {
  ReviewDecision r;
  r.candidate_id = id;
  r.decision = d;
  r.annotator = std::move(annotator);
  return r;
}

TEST(Enqueue, GatingAndDuplicates) {
  TempDir dir;
  ReviewStore store({dir.path() / "ledger.jsonl"});
  auto pool = candidate_pool("clinical", 242);
  EXPECT_EQ(store.enqueue(pool), 242u);
  EXPECT_EQ(store.stats().domains.at(Domain::kNli4ct).pending, 242u);
  EXPECT_EQ(store.enqueue(std::span(pool).first(5)), 0u);
  EXPECT_EQ(store.size(), 242u);

  auto more = candidate_pool("table", 3);
  more[1].self_check.compositionally_refutable = false;
  EXPECT_EQ(error_code_of([&] { store.enqueue(more); }), ErrorCode::kGatingViolation);
  EXPECT_EQ(store.size(), 242u);
  EXPECT_EQ(store.events(), 242u);
}

TEST(Decide, SupersessionIdempotenceAndConflict) {
  TempDir dir;
  ReviewStore store({dir.path() / "ledger.jsonl"});
  store.enqueue(candidate_pool("table", 3));
  EXPECT_EQ(store.decide(decision("table-000", Decision::kAccept)).status, CandidateStatus::kAccepted);

  store.decide(decision("table-001", Decision::kRejectAmbiguous));
  auto r = store.decide(decision("table-001", Decision::kAccept));
  EXPECT_TRUE(r.changed);
  EXPECT_EQ(store.status("table-001"), CandidateStatus::kAccepted);
  ASSERT_EQ(store.history("table-001").size(), 2u);
  EXPECT_EQ(store.history("table-001")[0].decision, Decision::kRejectAmbiguous);

  const auto events = store.events();
  auto again = store.decide(decision("table-001", Decision::kAccept));
  EXPECT_FALSE(again.changed);
  EXPECT_EQ(store.events(), events);
  // Same payload with a stale expectation still answers idempotently.
  EXPECT_FALSE(store.decide(decision("table-001", Decision::kAccept), CandidateStatus::kPending).changed);

  EXPECT_EQ(error_code_of([&] {
              store.decide(decision("table-002", Decision::kRejectInvalid), CandidateStatus::kAccepted);
            }),
            ErrorCode::kConflict);
  EXPECT_EQ(store.decide(decision("table-002", Decision::kRejectInvalid), CandidateStatus::kPending).status,
            CandidateStatus::kRejectedInvalid);
  EXPECT_EQ(error_code_of([&] { store.decide(decision("nope", Decision::kAccept)); }),
            ErrorCode::kUnknownCandidate);
  EXPECT_FALSE(store.history("table-002")[0].timestamp.empty());
}

TEST(Stats, ReferenceAcceptanceRates) {
  TempDir dir;
  ReviewStore store({dir.path() / "ledger.jsonl"});
  EXPECT_FALSE(store.stats().total.acceptance_rate());
  EXPECT_TRUE(store.stats().domains.empty());
  EXPECT_EQ(store.stats().to_json()["total"]["acceptance_rate"], nullptr);

  struct Plan {
    const char* name;
    Domain domain;
    std::size_t generated, accepted;
    double rate;
  };
  const Plan plans[] = {{"clinical", Domain::kNli4ct, 242, 203, 83.9},
                        {"table", Domain::kScitab, 230, 200, 87.0},
                        {"chart", Domain::kSciver, 213, 180, 84.5}};
  for (const auto& p : plans) {
    auto pool = candidate_pool(p.name, p.generated);
    store.enqueue(pool);
    for (std::size_t i = 0; i < p.generated; ++i) {
      auto d = i < p.accepted ? Decision::kAccept : i % 2 ? Decision::kRejectAmbiguous : Decision::kRejectInvalid;
      store.decide(decision(pool[i].id, d));
    }
  }
  auto s = store.stats();
  for (const auto& p : plans) {
    const auto& d = s.domains.at(p.domain);
    EXPECT_EQ(d.generated, p.generated);
    EXPECT_EQ(d.accepted, p.accepted);
    EXPECT_EQ(d.accepted + d.rejected_ambiguous + d.rejected_invalid + d.pending, d.generated);
    EXPECT_EQ(*d.acceptance_rate(), p.rate) << p.name;
  }
  EXPECT_EQ(s.to_json()["domains"]["nli4ct"]["acceptance_rate"], 83.9);

  // Export count equals the accepted count for every domain.
  for (const auto& p : plans) {
    auto path = dir.path() / (std::string(p.name) + ".jsonl");
    EXPECT_EQ(store.export_accepted(p.domain, path), p.accepted);
    auto ds = eval::load_dataset(path);
    EXPECT_EQ(ds.records.size(), p.accepted);
    EXPECT_EQ(ds.count(eval::ClaimClass::kAdvNeg), p.accepted);
    Json manifest = Json::parse(read_file(path.string() + ".manifest.json"));
    EXPECT_EQ(manifest["count"], p.accepted);
    EXPECT_EQ(manifest["dataset_sha256"], ds.hash);
  }
}

TEST(Export, RecordsRoundTripWithGraphs) {
  TempDir dir;
  ReviewStore store({dir.path() / "ledger.jsonl"});
  auto chart = candidate_pool("chart", 2);
  store.enqueue(chart);
  store.decide(decision("chart-001", Decision::kAccept));
  auto path = dir.path() / "out" / "sciver.jsonl";
  ASSERT_EQ(store.export_accepted(Domain::kSciver, path), 1u);
  auto ds = eval::load_dataset(path);
  ASSERT_EQ(ds.records.size(), 1u);
  const auto& r = ds.records[0];
  EXPECT_EQ(r.id, "chart-001");
  EXPECT_EQ(r.claim, chart[1].infeasible_claim);
  EXPECT_EQ(r.gold, eval::Label::kInfeasible);
  ASSERT_TRUE(r.graph);
  EXPECT_EQ(r.graph->to_json(), chart[1].graph.to_json());
  EXPECT_TRUE(graphgen::evidence_image(r.evidence)->is_absolute());

  auto empty = dir.path() / "nli4ct.jsonl";
  EXPECT_EQ(store.export_accepted(Domain::kNli4ct, empty), 0u);
  EXPECT_TRUE(read_file(empty).empty());
  Json manifest = Json::parse(read_file(empty.string() + ".manifest.json"));
  EXPECT_EQ(manifest["count"], 0);
  EXPECT_EQ(manifest["domain"], "nli4ct");
  EXPECT_TRUE(eval::load_dataset(empty).records.empty());
}

TEST(Ledger, ReplayReproducesStatuses) {
  TempDir dir;
  const auto ledger = dir.path() / "ledger.jsonl";
  const auto snapshot = dir.path() / "snapshot.json";
  std::mt19937 rng(31);
  std::map<std::string, CandidateStatus> live;
  {
    ReviewStore store({ledger, snapshot, 37});
    auto pool = candidate_pool("clinical", 60);
    auto table = candidate_pool("table", 40);
    store.enqueue(pool);
    store.enqueue(table);
    pool.insert(pool.end(), table.begin(), table.end());
    const Decision kinds[] = {Decision::kAccept, Decision::kRejectAmbiguous, Decision::kRejectInvalid};
    for (int k = 0; k < 400; ++k) {
      const auto& c = pool[rng() % pool.size()];
      store.decide(decision(c.id, kinds[rng() % 3], rng() % 2 ? "a1" : "a2"));
      if (k == 300) store.requeue_rejected("a1");
    }
    live = store.statuses();
    EXPECT_TRUE(fs::exists(snapshot));
  }
  EXPECT_EQ(ReviewStore::replay_statuses(ledger), live);
  ReviewStore reopened({ledger, snapshot, 37});
  EXPECT_EQ(reopened.statuses(), live);
  EXPECT_EQ(reopened.events(), ReviewStore({ledger}).events());
  for (const auto& [id, st] : live) {
    auto h = reopened.history(id);
    if (!h.empty() && st != CandidateStatus::kPending) EXPECT_EQ(status_after(h.back().decision), st);
  }

  // A snapshot from a longer ledger is ignored in favour of a full replay.
  TempDir other;
  {
    ReviewStore big({other.path() / "l.jsonl", other.path() / "s.json", 1});
    big.enqueue(candidate_pool("chart", 500));
  }
  fs::copy_file(other.path() / "s.json", snapshot, fs::copy_options::overwrite_existing);
  EXPECT_EQ(ReviewStore({ledger, snapshot}).statuses(), live);
}

TEST(Ledger, AppendOnly) {
  TempDir dir;
  const auto ledger = dir.path() / "ledger.jsonl";
  ReviewStore store({ledger});
  store.enqueue(candidate_pool("table", 2));
  const auto before = read_file(ledger);
  store.decide(decision("table-000", Decision::kRejectAmbiguous));
  store.decide(decision("table-000", Decision::kAccept));
  const auto after = read_file(ledger);
  EXPECT_EQ(after.substr(0, before.size()), before);
  EXPECT_EQ(store.events(), 4u);
}

TEST(Ledger, CorruptLineNamed) {
  TempDir dir;
  const auto ledger = dir.path() / "ledger.jsonl";
  {
    ReviewStore store({ledger});
    store.enqueue(candidate_pool("table", 1));
  }
  append_line(ledger, R"({"type": "decision", "decision": {"candidate_id": "ghost", "decision": "accept"}})");
  try {
    ReviewStore store({ledger});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchemaViolation);
    EXPECT_NE(std::string(e.what()).find("ledger.jsonl:2"), std::string::npos) << e.what();
  }
}

TEST(Requeue, OnlyAmbiguousReturnsToPending) {
  TempDir dir;
  ReviewStore store({dir.path() / "ledger.jsonl"});
  store.enqueue(candidate_pool("clinical", 4));
  store.decide(decision("clinical-000", Decision::kRejectAmbiguous));
  store.decide(decision("clinical-001", Decision::kRejectInvalid));
  store.decide(decision("clinical-002", Decision::kAccept));
  EXPECT_EQ(store.requeue_rejected("a1"), 1u);
  EXPECT_EQ(store.status("clinical-000"), CandidateStatus::kPending);
  EXPECT_EQ(store.status("clinical-001"), CandidateStatus::kRejectedInvalid);
  // After a requeue the same decision is a real change again.
  EXPECT_TRUE(store.decide(decision("clinical-000", Decision::kRejectAmbiguous)).changed);
}

TEST(List, FiltersAndPages) {
  TempDir dir;
  ReviewStore store({dir.path() / "ledger.jsonl"});
  store.enqueue(candidate_pool("clinical", 25));
  store.enqueue(candidate_pool("table", 5));
  store.decide(decision("clinical-003", Decision::kAccept));
  auto p = store.list({std::nullopt, Domain::kNli4ct, 3, 10});
  EXPECT_EQ(p.total, 25u);
  ASSERT_EQ(p.items.size(), 5u);
  EXPECT_EQ(p.items[0]["id"], "clinical-020");
  auto pending = store.list({CandidateStatus::kPending, std::nullopt, 1, 100});
  EXPECT_EQ(pending.total, 29u);
  auto accepted = store.list({CandidateStatus::kAccepted, std::nullopt, 1, 10});
  ASSERT_EQ(accepted.items.size(), 1u);
  EXPECT_EQ(accepted.items[0]["operation"], "PopulationShift");
  EXPECT_TRUE(store.list({std::nullopt, std::nullopt, 9, 10}).items.empty());
  EXPECT_EQ(error_code_of([&] { store.list({std::nullopt, std::nullopt, 0, 10}); }), ErrorCode::kInvalidRequest);
}

TEST(View, CarriesDiffWithoutGenerator) {
  TempDir dir;
  ReviewStore store({dir.path() / "ledger.jsonl"});
  store.enqueue(candidate_pool("chart", 1));
  auto v = store.view("chart-000");
  EXPECT_EQ(v["corruption"]["target_node_id"], "I1");
  EXPECT_EQ(v["corruption"]["operation"], "LocalToGlobalOverreach");
  EXPECT_NE(v["corruption"]["original_text"], v["corruption"]["corrupted_text"]);
  EXPECT_EQ(v["evidence"]["image_url"], "/candidates/chart-000/image");
  EXPECT_FALSE(v["evidence"].contains("image"));
  EXPECT_FALSE(v.contains("generator"));
  EXPECT_EQ(v["graph"]["nodes"].size(), 11u);
  EXPECT_EQ(error_code_of([&] { store.view("x"); }), ErrorCode::kUnknownCandidate);
}

}  // namespace
}  // namespace claimgate::review
