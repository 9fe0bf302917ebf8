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

#include "claimgate/graphgen/generator.hpp"
#include "claimgate/graphgen/screen.hpp"
#include "claimgate/llm/mock_provider.hpp"
#include "graphgen/worked_examples.hpp"

namespace claimgate::graphgen {
namespace {

using llm::MockProvider;
using llm::MockRule;
using testing::worked_example;
using testing::worked_examples;
using testing_support::error_code_of;

const llm::ModelHandle kGenerator{"mock", "gen", 0.0, 4096, false};
const llm::ModelHandle kChecker{"mock", "check", 0.0, 4096, false};

constexpr const char* kGraphMarker = "Build a reasoning graph";
constexpr const char* kCorruptMarker = "Generate a plausible-but-false";
constexpr const char* kCheckMarker = "You are auditing";

const std::string kAllTrue =
    R"({"locally_plausible": true, "not_single_step_falsifiable": true,
        "compositionally_refutable": true, "no_new_entities": true, "not_obviously_false": true})";

std::string graph_reply(const ReasoningGraph& g) {
  Json nodes = g.to_json().at("nodes");
  return "Here is the graph.\n```json\n" + Json{{"nodes", nodes}}.dump(2) + "\n```";
}

struct Harness {
  std::shared_ptr<MockProvider> mock;
  llm::Gateway gateway;

  explicit Harness(std::vector<MockRule> rules) : mock(std::make_shared<MockProvider>(rules)) {
    gateway.register_provider("mock", mock);
  }
};

MockRule rule(std::vector<std::string> contains, std::vector<std::string> responses) {
  return {std::move(contains), std::nullopt, std::move(responses)};
}

void expect_observations_unchanged(const ReasoningGraph& before, const ReasoningGraph& after) {
  for (const auto* o : before.layer(Layer::kObservation)) {
    const GraphNode* n = after.find(o->id);
    ASSERT_NE(n, nullptr);
    EXPECT_EQ(n->text, o->text) << o->id;
  }
}

TEST(BuildGraph, ParsesFencedReply) {
  for (const auto& w : worked_examples()) {
    Harness h({rule({kGraphMarker}, {graph_reply(w.graph)})});
    auto g = build_graph(h.gateway, w.source, kGenerator);
    EXPECT_EQ(g, w.graph) << w.name;
    EXPECT_EQ(g.source_id, w.source.id);
  }
}

TEST(BuildGraph, RetriesUnusableReplies) {
  auto w = worked_example("clinical");
  auto short_graph = testing::without(w.graph, {"I3"});
  Harness h({rule({kGraphMarker}, {"I cannot do that.", graph_reply(short_graph), graph_reply(w.graph)})});
  std::vector<Json> log;
  GenerationOptions opts;
  opts.log = [&](const Json& j) { log.push_back(j); };
  auto g = build_graph(h.gateway, w.source, kGenerator, opts);
  EXPECT_EQ(g, w.graph);
  EXPECT_EQ(h.mock->calls(), 3u);
  ASSERT_EQ(log.size(), 3u);
  EXPECT_NE(log[0]["error"].get<std::string>().find("no JSON"), std::string::npos);
  EXPECT_NE(log[1]["error"].get<std::string>().find("interpretation-count"), std::string::npos);
  EXPECT_TRUE(log[2]["error"].is_null());
}

TEST(BuildGraph, GivesUpAfterMaxAttempts) {
  auto w = worked_example("table");
  Harness h({rule({kGraphMarker}, {"{\"nodes\": []}"})});
  EXPECT_EQ(error_code_of([&] { build_graph(h.gateway, w.source, kGenerator); }),
            ErrorCode::kGenerationParseFailure);
  EXPECT_EQ(h.mock->calls(), 3u);
}

TEST(Corrupt, WorkedExamples) {
  for (const auto& w : worked_examples()) {
    Harness h({rule({kCorruptMarker}, {w.corruption.dump()})});
    auto target = w.corruption.at("target_node_id").get<std::string>();
    auto op = corruption_op_from_string(w.corruption.at("operation").get<std::string>());
    auto r = corrupt(h.gateway, w.graph, w.source, kGenerator, target, op);

    EXPECT_EQ(r.record.target_node_id, target);
    EXPECT_EQ(r.record.operation, *op);
    EXPECT_EQ(r.record.original_text, w.graph.find(target)->text);
    EXPECT_EQ(r.record.corrupted_text, w.corruption.at("corrupted_node_text").get<std::string>());
    EXPECT_EQ(r.infeasible_claim, w.corruption.at("infeasible_claim").get<std::string>());
    expect_observations_unchanged(w.graph, r.corrupted_graph);

    std::size_t changed = 0;
    for (std::size_t i = 0; i < w.graph.nodes.size(); ++i) {
      if (w.graph.nodes[i] != r.corrupted_graph.nodes[i]) {
        ++changed;
        EXPECT_EQ(w.graph.nodes[i].id, target);
      }
    }
    EXPECT_EQ(changed, 1u) << w.name;
  }
}

TEST(Corrupt, ClinicalPopulationShift) {
  auto w = worked_example("clinical");
  Harness h({rule({kCorruptMarker}, {w.corruption.dump()})});
  auto r = corrupt(h.gateway, w.graph, w.source, kGenerator, std::string("C3"),
                   CorruptionOp::kPopulationShift);
  EXPECT_NE(r.infeasible_claim.find("regardless of their geographic or ethnic background"),
            std::string::npos);
  EXPECT_EQ(r.corrupted_graph.find("O5")->text, "Only Japanese women are eligible.");
}

TEST(Corrupt, TableOverreach) {
  auto w = worked_example("table");
  Harness h({rule({kCorruptMarker}, {w.corruption.dump()})});
  auto r = corrupt(h.gateway, w.graph, w.source, kGenerator, std::string("I2"),
                   CorruptionOp::kLocalToGlobalOverreach);
  EXPECT_NE(r.infeasible_claim.find("consistently yields the highest"), std::string::npos);
  EXPECT_NE(r.corrupted_graph.find("I2")->text.find("consistently achieve the highest"),
            std::string::npos);
}

TEST(Corrupt, ObservationTargetRejectedWithoutCall) {
  auto w = worked_example("clinical");
  Harness h({rule({kCorruptMarker}, {w.corruption.dump()})});
  EXPECT_EQ(error_code_of([&] {
              corrupt(h.gateway, w.graph, w.source, kGenerator, std::string("O1"));
            }),
            ErrorCode::kTargetIsObservation);
  EXPECT_EQ(h.mock->calls(), 0u);
}

TEST(Corrupt, ModelInsistingOnObservation) {
  auto w = worked_example("clinical");
  Json reply = w.corruption;
  reply["target_node_id"] = "O5";
  Harness h({rule({kCorruptMarker}, {reply.dump()})});
  EXPECT_EQ(error_code_of([&] { corrupt(h.gateway, w.graph, w.source, kGenerator); }),
            ErrorCode::kTargetIsObservation);
  EXPECT_EQ(h.mock->calls(), 3u);
}

TEST(Corrupt, NewEntityTriggersRetry) {
  auto w = worked_example("chart");
  Json bad = w.corruption;
  bad["infeasible_claim"] = "Across all noise levels, rot10_std5_prob0.5 beats ResNet-152.";
  Harness h({rule({kCorruptMarker}, {bad.dump(), w.corruption.dump()})});
  std::vector<Json> log;
  GenerationOptions opts;
  opts.log = [&](const Json& j) { log.push_back(j); };
  auto r = corrupt(h.gateway, w.graph, w.source, kGenerator, std::nullopt, std::nullopt, opts);
  EXPECT_EQ(r.infeasible_claim, w.corruption.at("infeasible_claim").get<std::string>());
  ASSERT_EQ(log.size(), 2u);
  EXPECT_NE(log[0]["error"].get<std::string>().find("ResNet-152"), std::string::npos);
}

TEST(Corrupt, UnchangedTextOrUnknownOpIsUnusable) {
  auto w = worked_example("table");
  Json same = w.corruption;
  same["corrupted_node_text"] = w.graph.find("I2")->text;
  Json unknown_op = w.corruption;
  unknown_op["operation"] = "NumericFlip";
  Harness h({rule({kCorruptMarker}, {same.dump(), unknown_op.dump(), "{}"})});
  EXPECT_EQ(error_code_of([&] { corrupt(h.gateway, w.graph, w.source, kGenerator); }),
            ErrorCode::kGenerationParseFailure);
}

TEST(SelfCheck, WorkedNegativesPass) {
  for (const auto& w : worked_examples()) {
    Harness h({rule({kCheckMarker}, {kAllTrue})});
    auto s = self_check(h.gateway, w.source, w.graph,
                        w.corruption.at("infeasible_claim").get<std::string>(), kChecker);
    EXPECT_TRUE(s.passed()) << w.name << " " << s.to_json().dump();
  }
}

TEST(SelfCheck, NewEntityFailsConditionFour) {
  auto w = worked_example("clinical");
  Harness h({rule({kCheckMarker}, {kAllTrue})});
  auto s = self_check(h.gateway, w.source, w.graph,
                      "Women treated with Trastuzumab-X and tumors over 2 cm may enroll regardless "
                      "of background.",
                      kChecker);
  EXPECT_FALSE(s.no_new_entities);
  EXPECT_EQ(s.unknown_entities, std::vector<std::string>{"Trastuzumab-X"});
  EXPECT_TRUE(s.locally_plausible);
  EXPECT_FALSE(s.passed());
}

TEST(SelfCheck, DirectlyStatedClaimFailsConditionTwo) {
  auto w = worked_example("clinical");
  w.source.evidence = ClinicalEvidence{"The trial enrolled patients with confirmed disease.", ""};
  Harness h({rule({kCheckMarker}, {kAllTrue})});
  auto s = self_check(h.gateway, w.source, w.graph, "the trial enrolled patients", kChecker);
  EXPECT_FALSE(s.not_single_step_falsifiable);
  ASSERT_TRUE(s.single_step_unit);
  EXPECT_EQ(*s.single_step_unit, "The trial enrolled patients with confirmed disease.");
  EXPECT_TRUE(s.no_new_entities);
  EXPECT_FALSE(s.passed());
}

TEST(SelfCheck, ModelVerdictsAreRespected) {
  auto w = worked_example("table");
  Harness h({rule({kCheckMarker},
                  {R"({"locally_plausible": true, "not_single_step_falsifiable": true,
                       "compositionally_refutable": false, "no_new_entities": true,
                       "not_obviously_false": true})"})});
  auto s = self_check(h.gateway, w.source, w.graph,
                      w.corruption.at("infeasible_claim").get<std::string>(), kChecker);
  EXPECT_FALSE(s.compositionally_refutable);
  EXPECT_FALSE(s.passed());
}

TEST(SelfCheck, UnparseableReplyFailsClosed) {
  auto w = worked_example("table");
  Harness h({rule({kCheckMarker}, {"All conditions hold."})});
  auto s = self_check(h.gateway, w.source, w.graph,
                      w.corruption.at("infeasible_claim").get<std::string>(), kChecker);
  EXPECT_TRUE(s.parse_error);
  EXPECT_FALSE(s.passed());
  EXPECT_EQ(SelfCheck::from_json(s.to_json()).to_json(), s.to_json());
}

TEST(Rephrase, SurfaceFormAndEmpty) {
  Harness h({rule({"formal academic register"},
                  {"\"It is established that the trial admits women with tumors exceeding 2 cm, "
                   "irrespective of geographic or ethnic background.\"\n"})});
  auto r = rephrase_negative(h.gateway, "Women with tumors over 2 cm may enroll anywhere.",
                             RephraseStyle::kSurfaceForm, kGenerator);
  EXPECT_EQ(r.original, "Women with tumors over 2 cm may enroll anywhere.");
  EXPECT_EQ(r.rephrased.front(), 'I');
  EXPECT_EQ(r.rephrased.back(), '.');
  EXPECT_GT(r.rephrased.size(), r.original.size());
  EXPECT_EQ(error_code_of([&] {
              rephrase_negative(h.gateway, "  ", RephraseStyle::kCrossModel, kGenerator);
            }),
            ErrorCode::kEmptyInput);
}

TEST(Candidate, JsonRoundTrip) {
  auto w = worked_example("chart");
  CandidateHardNegative c;
  c.id = w.source.id + "-adv0";
  c.source = w.source;
  c.graph = w.graph;
  c.corruption = {"I1", CorruptionOp::kLocalToGlobalOverreach, w.graph.find("I1")->text,
                  w.corruption.at("corrupted_node_text").get<std::string>(), "notes"};
  c.infeasible_claim = w.corruption.at("infeasible_claim").get<std::string>();
  c.self_check.locally_plausible = true;
  c.generator = kGenerator;
  auto j = c.to_json();
  EXPECT_EQ(CandidateHardNegative::from_json(j).to_json(), j);
  EXPECT_EQ(j["status"], "pending");
  EXPECT_EQ(j["domain"], "sciver");
}

}  // namespace
}  // namespace claimgate::graphgen
