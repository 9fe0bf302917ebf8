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

#include "claimgate/common/io.hpp"
#include "claimgate/eval/dataset.hpp"
#include "claimgate/eval/prompts.hpp"
#include "support/fixtures.hpp"
#include "support/temp_dir.hpp"

namespace claimgate::eval {
namespace {

using testing_support::error_code_of;
using testing_support::fixture;
using testing_support::TempDir;

const llm::ModelHandle kHandle{"mock", "m", 1.0, 4096, false};

Dataset fixture_dataset() { return load_dataset(fixture("eval/dataset.jsonl")); }

const DatasetRecord& by_id(const Dataset& d, const std::string& id) {
  for (const auto& r : d.records)
    if (r.id == id) return r;
  throw std::runtime_error("missing " + id);
}

TEST(Dataset, ClassCounts) {
  auto d = fixture_dataset();
  EXPECT_EQ(d.records.size(), 8u);
  EXPECT_EQ(d.count(ClaimClass::kStandardPos), 2u);
  EXPECT_EQ(d.count(ClaimClass::kStandardNeg), 2u);
  EXPECT_EQ(d.count(ClaimClass::kAdvNeg), 2u);
  EXPECT_EQ(d.count(ClaimClass::kRephrasedNeg), 2u);
  EXPECT_EQ(d.hash.size(), 64u);
  EXPECT_EQ(d.counts_json().dump(),
            R"({"standard_pos":2,"standard_neg":2,"adv_neg":2,"rephrased_neg":2})");
  EXPECT_TRUE(std::filesystem::exists(*graphgen::evidence_image(by_id(d, "chart-neg-1").evidence)));
}

std::string mutate_line(std::size_t index, const std::function<void(Json&)>& edit) {
  auto rows = read_jsonl(fixture("eval/dataset.jsonl"));
  for (auto& r : rows) {
    if (r["evidence"]["kind"] == "chart") {
      r["evidence"]["image"] = (fixture("eval") / r["evidence"]["image"].get<std::string>()).string();
    }
  }
  edit(rows[index]);
  std::string out;
  for (const auto& r : rows) out += r.dump() + "\n";
  return out;
}

TEST(Dataset, AdversarialNegativeMustBeInfeasible) {
  TempDir dir;
  write_file_atomic(dir / "d.jsonl", mutate_line(4, [](Json& j) { j["gold_label"] = "feasible"; }));
  try {
    load_dataset(dir / "d.jsonl");
    FAIL() << "expected schema-violation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchemaViolation);
    EXPECT_NE(std::string(e.what()).find(":5:"), std::string::npos) << e.what();
  }
}

TEST(Dataset, OtherSchemaErrors) {
  TempDir dir;
  auto bad = [&](std::size_t i, const std::function<void(Json&)>& edit) {
    write_file_atomic(dir / "d.jsonl", mutate_line(i, edit));
    return error_code_of([&] { load_dataset(dir / "d.jsonl"); });
  };
  EXPECT_EQ(bad(0, [](Json& j) { j["gold_label"] = "infeasible"; }), ErrorCode::kSchemaViolation);
  EXPECT_EQ(bad(0, [](Json& j) { j["claim_class"] = "adversarial"; }), ErrorCode::kSchemaViolation);
  EXPECT_EQ(bad(1, [](Json& j) { j["id"] = "ct-pos-1"; }), ErrorCode::kSchemaViolation);
  EXPECT_EQ(bad(1, [](Json& j) { j["domain"] = "sciver"; }), ErrorCode::kSchemaViolation);
  EXPECT_EQ(bad(0, [](Json& j) { j.erase("claim"); }), ErrorCode::kSchemaViolation);
  EXPECT_EQ(bad(3, [](Json& j) { j["evidence"]["image"] = "nope.png"; }), ErrorCode::kSchemaViolation);
}

TEST(Dataset, RoundTrip) {
  TempDir dir;
  auto d = fixture_dataset();
  write_dataset(dir / "copy.jsonl", d.records);
  auto back = load_dataset(dir / "copy.jsonl");
  ASSERT_EQ(back.records.size(), d.records.size());
  for (std::size_t i = 0; i < d.records.size(); ++i) {
    EXPECT_EQ(back.records[i].to_json(), d.records[i].to_json());
  }
}

std::string text_of(const llm::ChatRequest& r) {
  EXPECT_EQ(r.messages.size(), 1u);
  return r.messages.at(0).text;
}

bool has(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

TEST(Prompt, ClosedWorldBlockForTable) {
  auto d = fixture_dataset();
  auto t = text_of(build_prompt(by_id(d, "tab-pos-1"), PromptCondition::kCwa, kHandle));
  EXPECT_TRUE(has(t, "You are under closed-world assumption.\n"));
  EXPECT_TRUE(has(t, "- FEASIBLE only if all parts of the claim are explicitly supported.\n"));
  EXPECT_TRUE(has(t, "- INFEASIBLE if any part is unsupported or contradicted.\n"));
  EXPECT_TRUE(has(t, "Absence of supporting evidence counts as INFEASIBLE."));
  EXPECT_TRUE(has(t, "- table: table context"));
  EXPECT_FALSE(has(t, "clinical: full trial"));
  EXPECT_TRUE(has(t, "sparse-TVmax | yes | yes | 85.35"));
  EXPECT_FALSE(has(t, "Subclaims"));
}

TEST(Prompt, ChartCarriesOneImage) {
  auto d = fixture_dataset();
  auto req = build_prompt(by_id(d, "chart-neg-1"), PromptCondition::kBaseline, kHandle);
  ASSERT_EQ(req.messages.size(), 1u);
  ASSERT_TRUE(req.messages[0].image);
  EXPECT_EQ(req.messages[0].image->filename(), "noise_map.png");
  EXPECT_TRUE(has(req.messages[0].text, "Use the evidence to decide whether the claim is supported."));
  EXPECT_TRUE(has(req.messages[0].text, "- chart: image (+ optional context)"));

  auto clinical = build_prompt(by_id(d, "ct-pos-1"), PromptCondition::kBaseline, kHandle);
  EXPECT_FALSE(clinical.messages[0].image);
}

TEST(Prompt, DecompositionStepsForClinical) {
  auto d = fixture_dataset();
  auto t = text_of(build_prompt(by_id(d, "ct-neg-1"), PromptCondition::kDcpCwa, kHandle));
  EXPECT_TRUE(has(t, "STEP 1 --- DECOMPOSE"));
  EXPECT_TRUE(has(t, "STEP 2 --- CHECK SUPPORT"));
  EXPECT_TRUE(has(t, "STEP 3 --- VERDICT"));
  EXPECT_TRUE(has(t, "- INFEASIBLE: any subclaim is not supported"));
  EXPECT_TRUE(has(t, "- Subclaims: list"));
  EXPECT_TRUE(has(t, "- clinical: full trial + target excerpt"));
  EXPECT_TRUE(has(t, "Full trial:\nEligibility"));

  auto owa = text_of(build_prompt(by_id(d, "ct-neg-1"), PromptCondition::kDcpOwa, kHandle));
  EXPECT_TRUE(has(owa, "STEP 2 --- CHECK CONTRADICTION"));
  EXPECT_TRUE(has(owa, "- absence of evidence does not invalidate it"));
}

TEST(Prompt, EveryConditionEndsWithVerdictContract) {
  auto d = fixture_dataset();
  for (auto c : kRocOrder) {
    auto t = text_of(build_prompt(d.records[0], c, kHandle));
    EXPECT_TRUE(has(t, "- Verdict: FEASIBLE or INFEASIBLE")) << to_string(c);
    EXPECT_TRUE(has(t, "Claim: " + d.records[0].claim)) << to_string(c);
    EXPECT_EQ(has(t, "Subclaims"), is_decomposition(c));
  }
  auto owa = text_of(build_prompt(d.records[0], PromptCondition::kOwa, kHandle));
  EXPECT_TRUE(has(owa, "Do not reject a claim based on missing evidence alone."));
}

TEST(GraphPrompt, LayersAccumulate) {
  auto d = fixture_dataset();
  const auto& r = by_id(d, "ct-adv-1");
  auto none = text_of(build_graph_condition_prompt(r, GraphCondition::kNoGraph, kHandle));
  auto o = text_of(build_graph_condition_prompt(r, GraphCondition::kGraphO, kHandle));
  auto oc = text_of(build_graph_condition_prompt(r, GraphCondition::kGraphOC, kHandle));
  auto all = text_of(build_graph_condition_prompt(r, GraphCondition::kGraphAll, kHandle));

  for (const auto* n : r.graph->layer(graphgen::Layer::kObservation)) {
    EXPECT_FALSE(has(none, n->id + ": " + n->text));
    EXPECT_TRUE(has(o, n->id + ": " + n->text));
  }
  for (const auto* n : r.graph->layer(graphgen::Layer::kContext)) {
    EXPECT_FALSE(has(o, n->text));
    EXPECT_TRUE(has(oc, n->text));
  }
  for (const auto* n : r.graph->layer(graphgen::Layer::kInterpretation)) {
    EXPECT_FALSE(has(oc, n->text));
    EXPECT_TRUE(has(all, n->text));
  }
  EXPECT_TRUE(has(o, none));
  EXPECT_TRUE(has(oc, o));
  EXPECT_TRUE(has(all, oc));
  EXPECT_LT(o.size(), oc.size());
  EXPECT_LT(oc.size(), all.size());
}

TEST(GraphPrompt, MissingGraph) {
  auto d = fixture_dataset();
  EXPECT_EQ(error_code_of([&] {
              build_graph_condition_prompt(by_id(d, "ct-neg-1"), GraphCondition::kGraphAll, kHandle);
            }),
            ErrorCode::kMissingGraph);
  EXPECT_FALSE(error_code_of([&] {
    build_graph_condition_prompt(by_id(d, "ct-neg-1"), GraphCondition::kNoGraph, kHandle);
  }));
}

TEST(Conditions, NamesRoundTrip) {
  for (auto c : kRocOrder) EXPECT_EQ(prompt_condition_from_string(to_string(c)), c);
  for (auto g : {GraphCondition::kNoGraph, GraphCondition::kGraphO, GraphCondition::kGraphOC,
                 GraphCondition::kGraphAll}) {
    EXPECT_EQ(graph_condition_from_string(to_string(g)), g);
  }
  EXPECT_EQ(error_code_of([] { prompt_condition_from_string("strict"); }), ErrorCode::kUsage);
  EvalCondition c{PromptCondition::kBaseline, GraphCondition::kGraphOC};
  EXPECT_EQ(c.label(), "baseline+graph-oc");
  EXPECT_EQ(EvalCondition::from_json(c.to_json()), c);
}

}  // namespace
}  // namespace claimgate::eval
