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

#include <atomic>
#include <random>
#include <regex>

#include "claimgate/llm/mock_provider.hpp"
#include "claimgate/selfverify/pipeline.hpp"
#include "claimgate/selfverify/taxonomy.hpp"
#include "support/fixtures.hpp"
#include "support/temp_dir.hpp"

namespace claimgate::selfverify {
namespace {

using testing_support::error_code_of;
using V = VerifierVerdict;

TEST(Taxonomy, EveryRow) {
  EXPECT_EQ(classify_case(false, V::kReject, true), CaseLabel::kTP);
  EXPECT_EQ(classify_case(true, V::kAccept, std::nullopt), CaseLabel::kTN);
  EXPECT_EQ(classify_case(false, V::kReject, false), CaseLabel::kLuckyCatch);
  EXPECT_EQ(classify_case(true, V::kReject, std::nullopt), CaseLabel::kFPRejectCorrect);
  EXPECT_EQ(classify_case(false, V::kAccept, std::nullopt), CaseLabel::kFN);
}

TEST(Taxonomy, ReasoningValidityOnlyForRejectedIncorrect) {
  EXPECT_EQ(error_code_of([] { classify_case(false, V::kReject, std::nullopt); }), ErrorCode::kInconsistentInputs);
  EXPECT_EQ(error_code_of([] { classify_case(true, V::kAccept, true); }), ErrorCode::kInconsistentInputs);
  EXPECT_EQ(error_code_of([] { classify_case(true, V::kReject, false); }), ErrorCode::kInconsistentInputs);
  EXPECT_EQ(error_code_of([] { classify_case(false, V::kAccept, true); }), ErrorCode::kInconsistentInputs);
}

struct ReferenceRow {
  const char* dataset;
  const char* variant;
  std::size_t n;
  double acc, f1;
  std::size_t tp, tn, fp, fn, rej_den;
  double prec;
};

// Reference self-verification results; FP is the merged column and
// LuckyCatch is recovered from the Prec@Rej denominator.
const ReferenceRow kReference[] = {
    {"GPQA", "baseline", 198, 0.313, 0.218, 19, 43, 82, 54, 75, 0.253},
    {"GPQA", "cwa", 198, 0.318, 0.262, 24, 39, 94, 41, 88, 0.273},
    {"GPQA", "owa", 198, 0.283, 0.165, 14, 42, 81, 61, 68, 0.206},
    {"AIME", "baseline", 200, 0.255, 0.287, 30, 21, 93, 56, 117, 0.256},
    {"AIME", "cwa", 200, 0.285, 0.347, 38, 19, 101, 42, 131, 0.290},
    {"AIME", "owa", 200, 0.230, 0.238, 24, 22, 87, 67, 106, 0.226},
};

LabelCounts counts_of(const ReferenceRow& r) {
  LabelCounts c;
  c.tp = r.tp;
  c.tn = r.tn;
  c.lucky_catch = r.rej_den - r.tp;
  c.fp_reject_correct = r.fp - c.lucky_catch;
  c.fn = r.fn;
  return c;
}

TEST(Metrics, GpqaBaselineOracle) {
  LabelCounts c{19, 43, 26, 56, 54};
  auto r = compute_self_verify_metrics(c, "baseline");
  EXPECT_EQ(c.n(), 198u);
  EXPECT_EQ(c.fp_total(), 82u);
  EXPECT_NEAR(r.accuracy, 0.313, 0.001);
  EXPECT_NEAR(*r.f1, 0.218, 0.005);
  EXPECT_NEAR(*r.prec_at_rej, 19.0 / 75.0, 1e-12);
  EXPECT_NEAR(*r.prec_at_rej, 0.253, 0.002);
  EXPECT_EQ(c.solver_incorrect(), 129u);
  EXPECT_EQ(c.solver_correct(), 69u);
}

TEST(Metrics, AimeBaselineOracle) {
  LabelCounts c{30, 21, 6, 87, 56};
  auto r = compute_self_verify_metrics(c, "baseline");
  EXPECT_NEAR(*r.f1, 0.287, 0.005);
  EXPECT_NEAR(*r.f1, 60.0 / 209.0, 1e-12);
}

TEST(Metrics, EveryReferenceRowReproduces) {
  std::map<std::string, std::pair<std::size_t, std::size_t>> split;
  for (const auto& row : kReference) {
    auto c = counts_of(row);
    auto r = compute_self_verify_metrics(c, row.variant);
    EXPECT_EQ(c.n(), row.n) << row.dataset << " " << row.variant;
    EXPECT_NEAR(r.accuracy, row.acc, 0.0005) << row.dataset << " " << row.variant;
    EXPECT_NEAR(*r.f1, row.f1, 0.0005) << row.dataset << " " << row.variant;
    EXPECT_NEAR(*r.prec_at_rej, row.prec, 0.0005) << row.dataset << " " << row.variant;
    // One solver response per problem: the correct/incorrect split cannot
    // depend on the verifier condition.
    auto [it, fresh] = split.try_emplace(row.dataset, c.solver_incorrect(), c.solver_correct());
    if (!fresh) {
      EXPECT_EQ(it->second.first, c.solver_incorrect()) << row.dataset << " " << row.variant;
      EXPECT_EQ(it->second.second, c.solver_correct()) << row.dataset << " " << row.variant;
    }
  }
  EXPECT_EQ(split.at("GPQA"), std::make_pair(std::size_t{129}, std::size_t{69}));
  EXPECT_EQ(split.at("AIME"), std::make_pair(std::size_t{173}, std::size_t{27}));
}

TEST(Metrics, UndefinedCells) {
  auto r = compute_self_verify_metrics(LabelCounts{0, 10, 0, 0, 0});
  EXPECT_EQ(r.accuracy, 1.0);
  EXPECT_FALSE(r.f1);
  EXPECT_FALSE(r.prec_at_rej);
  EXPECT_FALSE(r.rejection_precision);
  EXPECT_FALSE(r.macro_f1);
  EXPECT_EQ(r.to_json()["f1"], nullptr);
  EXPECT_EQ(error_code_of([] { compute_self_verify_metrics(LabelCounts{}); }), ErrorCode::kEmptyInput);
}

TEST(Metrics, RandomCaseProperties) {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<SelfVerifyCase> cases(1 + rng() % 60);
    std::size_t incorrect = 0;
    for (auto& c : cases) {
      c.judge_solver_correct = rng() % 2;
      c.verifier_verdict = rng() % 2 ? V::kAccept : V::kReject;
      if (!c.judge_solver_correct && c.verifier_verdict == V::kReject) c.judge_reasoning_valid = rng() % 2;
      c.label = classify_case(c.judge_solver_correct, c.verifier_verdict, c.judge_reasoning_valid);
      incorrect += !c.judge_solver_correct;
    }
    auto counts = count_labels(cases);
    EXPECT_EQ(counts.n(), cases.size());
    EXPECT_EQ(counts.solver_incorrect(), incorrect);
    EXPECT_EQ(counts.solver_incorrect() + counts.solver_correct(), counts.n());
    auto r = compute_self_verify_metrics(cases, "x");
    EXPECT_NEAR(r.accuracy, double(counts.tp + counts.tn) / counts.n(), 1e-12);
    if (r.prec_at_rej && r.rejection_precision) {
      EXPECT_LE(*r.rejection_precision, *r.prec_at_rej + 1e-12);
    }
    // Adding LuckyCatch rejections only dilutes precision.
    if (r.rejection_precision) EXPECT_LE(*r.rejection_precision, 1.0);
    if (r.prec_at_rej) EXPECT_LE(*r.prec_at_rej, 1.0);
    std::shuffle(cases.begin(), cases.end(), rng);
    EXPECT_EQ(compute_self_verify_metrics(cases, "x").to_json(), r.to_json());
  }
}

TEST(Report, MirrorsReferenceLayout) {
  std::vector<ReportRow> rows;
  for (const auto& row : kReference) rows.push_back({row.dataset, compute_self_verify_metrics(counts_of(row), row.variant)});
  auto md = render_self_verify_markdown(rows);
  EXPECT_NE(md.find("| GPQA | baseline | 198 | 0.313 | 0.218 | 19 | 43 | 82 | 54 | 19/75 ≈ 0.253 |"),
            std::string::npos)
      << md;
  EXPECT_NE(md.find("|  | owa | 200 | 0.230 | 0.238 | 24 | 22 | 87 | 67 | 24/106 ≈ 0.226 |"), std::string::npos)
      << md;
  auto csv = render_self_verify_csv(rows);
  EXPECT_NE(csv.find("GPQA,baseline,198,0.3131,0.2184,"), std::string::npos) << csv;
  EXPECT_NE(csv.find(",19,43,26,56,54,0.2533"), std::string::npos) << csv;
}

TEST(VerifierReply, Parsing) {
  auto a = parse_verifier_reply("Reason: the sum in step 3 drops a term.\nVerdict: REJECT");
  EXPECT_EQ(a.verdict, V::kReject);
  EXPECT_TRUE(a.parsed);
  EXPECT_EQ(a.reasoning, "the sum in step 3 drops a term.");
  auto b = parse_verifier_reply("- Reason: all constraints hold - **Verdict:** ACCEPT");
  EXPECT_EQ(b.verdict, V::kAccept);
  auto c = parse_verifier_reply("Verdict:\n\nREJECT\n");
  EXPECT_EQ(c.verdict, V::kReject);
  EXPECT_TRUE(c.parsed);
  auto d = parse_verifier_reply("I would reject an answer like this, but here it is fine.\nVerdict: accepted");
  EXPECT_EQ(d.verdict, V::kAccept);
  auto e = parse_verifier_reply("Looks fine overall.\nREJECT");
  EXPECT_EQ(e.verdict, V::kReject);
  auto f = parse_verifier_reply("No decision here; the rejection criteria are unclear.");
  EXPECT_FALSE(f.parsed);
  EXPECT_EQ(f.verdict, V::kAccept);
}

TEST(JudgeFinding, Parsing) {
  auto a = parse_judge_finding(R"(```json
{"solver_correct": false, "verdict_correct": true, "reasoning_valid": true}
```)");
  EXPECT_FALSE(a.solver_correct);
  EXPECT_TRUE(a.verdict_correct);
  EXPECT_EQ(a.reasoning_valid, true);
  auto b = parse_judge_finding(R"({"solver_correct": "yes", "verdict_correct": "no", "reasoning_valid": null})");
  EXPECT_TRUE(b.solver_correct);
  EXPECT_FALSE(b.reasoning_valid);
  EXPECT_EQ(error_code_of([] { parse_judge_finding("solver was right"); }), ErrorCode::kJudgeParseFailure);
  EXPECT_EQ(error_code_of([] { parse_judge_finding(R"({"verdict_correct": true})"); }),
            ErrorCode::kJudgeParseFailure);
  EXPECT_EQ(error_code_of([] {
              parse_judge_finding(R"({"solver_correct": true, "verdict_correct": true, "reasoning_valid": 3})");
            }),
            ErrorCode::kJudgeParseFailure);
}

TEST(Prompts, ConditionVariants) {
  Problem p{"p1", "Find x such that x + 2 = 5.", "3"};
  auto base = verifier_prompt(p, "x = 3", eval::PromptCondition::kBaseline);
  auto owa = verifier_prompt(p, "x = 3", eval::PromptCondition::kOwa);
  auto cwa = verifier_prompt(p, "x = 3", eval::PromptCondition::kCwa);
  EXPECT_NE(owa.find("open-world assumption"), std::string::npos);
  EXPECT_NE(cwa.find("closed-world assumption"), std::string::npos);
  EXPECT_EQ(base.find("assumption"), std::string::npos);
  for (const auto* s : {&base, &owa, &cwa}) {
    EXPECT_NE(s->find("Verdict: ACCEPT or REJECT"), std::string::npos);
    EXPECT_NE(s->find("x = 3"), std::string::npos);
  }
  EXPECT_EQ(error_code_of([&] { verifier_prompt(p, "x", eval::PromptCondition::kDcpCwa); }), ErrorCode::kUsage);
  auto j = judge_prompt(p, "x = 3", V::kAccept, "fine");
  EXPECT_NE(j.find("Reference answer: 3"), std::string::npos);
  EXPECT_NE(j.find("Verifier verdict: ACCEPT"), std::string::npos);
  EXPECT_EQ(solver_prompt(p).find("Reference"), std::string::npos);
}

TEST(Problems, Loading) {
  testing_support::TempDir dir;
  auto path = dir.path() / "p.jsonl";
  write_file_atomic(path, R"j({"id": "a", "statement": "s", "gold_answer": 204}
{"id": "b", "statement": "t", "gold_answer": "(C)"}
)j");
  auto ps = load_problems(path);
  ASSERT_EQ(ps.size(), 2u);
  EXPECT_EQ(ps[0].gold_answer, "204");
  append_line(path, R"({"id": "a", "statement": "s", "gold_answer": "1"})");
  try {
    load_problems(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchemaViolation);
    EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
  }
}

// Problem P<i> is scripted to land on label i % 5 for every condition.
struct Trio {
  std::shared_ptr<llm::MockProvider> provider;
  std::atomic<int> solver_calls{0}, verifier_calls{0}, judge_calls{0};
};

CaseLabel scripted_label(int i) { return kCaseLabels[static_cast<std::size_t>(i % 5)]; }

std::shared_ptr<Trio> make_trio(std::optional<int> broken_judge = std::nullopt) {
  auto trio = std::make_shared<Trio>();
  Trio* t = trio.get();
  trio->provider = std::make_shared<llm::MockProvider>(
      std::vector<llm::MockRule>{}, [t, broken_judge](const llm::PreparedRequest& r) -> std::optional<std::string> {
        const std::string text = r.joined_text();
        std::smatch m;
        std::regex_search(text, m, std::regex("Problem P([0-9]+)"));
        const int i = std::stoi(m[1]);
        const CaseLabel l = scripted_label(i);
        const bool solver_correct = l == CaseLabel::kTN || l == CaseLabel::kFPRejectCorrect;
        const bool reject = l == CaseLabel::kTP || l == CaseLabel::kLuckyCatch || l == CaseLabel::kFPRejectCorrect;
        if (text.rfind("Solve the following", 0) == 0) {
          ++t->solver_calls;
          return std::string("Work for P") + std::to_string(i) + ".\nFinal answer: " + (solver_correct ? "42" : "41");
        }
        if (text.rfind("Determine whether a proposed solution", 0) == 0) {
          ++t->verifier_calls;
          return std::string("Reason: checked P") + std::to_string(i) + "\nVerdict: " + (reject ? "REJECT" : "ACCEPT");
        }
        ++t->judge_calls;
        if (broken_judge && i == *broken_judge) return std::string("cannot tell");
        Json j = {{"solver_correct", solver_correct},
                  {"verdict_correct", reject != solver_correct},
                  {"reasoning_valid", l == CaseLabel::kTP ? Json(true) : l == CaseLabel::kLuckyCatch ? Json(false) : Json(nullptr)}};
        return j.dump();
      });
  return trio;
}

std::vector<Problem> problems(int n) {
  std::vector<Problem> out;
  for (int i = 0; i < n; ++i) out.push_back({"P" + std::to_string(i), "Problem P" + std::to_string(i) + ": compute.", "42"});
  return out;
}

const llm::ModelHandle kSolver{"mock", "solver-m", 0.0, 1024, false};
const llm::ModelHandle kJudge{"mock", "judge-m", 0.0, 1024, false};

TEST(Pipeline, ScriptedTrioMatchesScript) {
  auto trio = make_trio();
  llm::Gateway gw;
  gw.register_provider("mock", trio->provider);
  auto ps = problems(200);
  auto run = run_self_verify(gw, ps, kSolver, kSolver, kJudge, eval::PromptCondition::kCwa);
  ASSERT_EQ(run.cases.size(), 200u);
  EXPECT_FALSE(run.partial());
  for (int i = 0; i < 200; ++i) {
    EXPECT_EQ(run.cases[i].problem_id, ps[i].id);
    EXPECT_EQ(run.cases[i].label, scripted_label(i)) << i;
    EXPECT_TRUE(run.cases[i].warnings.empty());
  }
  auto counts = count_labels(run.cases);
  EXPECT_EQ(counts.n(), 200u);
  for (auto l : kCaseLabels) EXPECT_EQ(counts.at(l), 40u);
  EXPECT_EQ(trio->solver_calls, 200);
  EXPECT_EQ(trio->verifier_calls, 200);
  EXPECT_EQ(trio->judge_calls, 200);
}

TEST(Pipeline, SolverSharedAcrossConditionsThroughCache) {
  testing_support::TempDir dir;
  auto trio = make_trio();
  llm::GatewayOptions go;
  go.cache_dir = dir.path() / "cache";
  llm::Gateway gw(go);
  gw.register_provider("mock", trio->provider);
  auto ps = problems(20);
  std::vector<LabelCounts> per_condition;
  for (auto c : {eval::PromptCondition::kBaseline, eval::PromptCondition::kOwa, eval::PromptCondition::kCwa}) {
    per_condition.push_back(count_labels(run_self_verify(gw, ps, kSolver, kSolver, kJudge, c).cases));
  }
  EXPECT_EQ(trio->solver_calls, 20);
  EXPECT_EQ(trio->verifier_calls, 60);
  EXPECT_EQ(trio->judge_calls, 60);
  for (const auto& c : per_condition) EXPECT_EQ(c.solver_incorrect(), per_condition[0].solver_incorrect());
}

TEST(Pipeline, GuardsAndFailures) {
  auto trio = make_trio(3);
  llm::Gateway gw;
  gw.register_provider("mock", trio->provider);
  auto ps = problems(10);
  EXPECT_EQ(error_code_of([&] { run_self_verify(gw, ps, kSolver, kSolver, kSolver, eval::PromptCondition::kCwa); }),
            ErrorCode::kUsage);
  SelfVerifyOptions same;
  same.allow_same_judge = true;
  same.workers = 1;
  EXPECT_NO_THROW(run_self_verify(gw, std::span(ps).first(2), kSolver, kSolver, kSolver,
                                  eval::PromptCondition::kCwa, same));
  EXPECT_EQ(error_code_of([&] {
              run_self_verify(gw, ps, kSolver, kSolver, kJudge, eval::PromptCondition::kDcpOwa);
            }),
            ErrorCode::kUsage);
  EXPECT_EQ(error_code_of([&] {
              run_self_verify(gw, std::span<const Problem>{}, kSolver, kSolver, kJudge,
                              eval::PromptCondition::kCwa);
            }),
            ErrorCode::kEmptyInput);
  auto run = run_self_verify(gw, ps, kSolver, kSolver, kJudge, eval::PromptCondition::kOwa);
  EXPECT_TRUE(run.partial());
  ASSERT_EQ(run.failures.size(), 1u);
  EXPECT_EQ(run.failures[0].problem_id, "P3");
  EXPECT_EQ(run.failures[0].code, "judge-parse-failure");
  EXPECT_EQ(run.cases.size(), 9u);
}

TEST(Pipeline, ResumesAndRejectsForeignDirectory) {
  testing_support::TempDir dir;
  auto ps = problems(12);
  SelfVerifyOptions opts;
  opts.out_dir = dir.path() / "sv";
  {
    auto trio = make_trio(5);
    llm::Gateway gw;
    gw.register_provider("mock", trio->provider);
    auto run = run_self_verify(gw, ps, kSolver, kSolver, kJudge, eval::PromptCondition::kBaseline, opts);
    EXPECT_EQ(run.cases.size(), 11u);
  }
  auto trio = make_trio();
  llm::Gateway gw;
  gw.register_provider("mock", trio->provider);
  auto run = run_self_verify(gw, ps, kSolver, kSolver, kJudge, eval::PromptCondition::kBaseline, opts);
  EXPECT_EQ(run.resumed, 11u);
  EXPECT_EQ(run.cases.size(), 12u);
  EXPECT_EQ(trio->solver_calls, 1);
  EXPECT_EQ(load_cases(*opts.out_dir / "cases.jsonl").size(), 12u);
  EXPECT_EQ(read_jsonl(*opts.out_dir / "failures.jsonl").size(), 0u);
  EXPECT_EQ(error_code_of([&] {
              run_self_verify(gw, ps, kSolver, kSolver, kJudge, eval::PromptCondition::kCwa, opts);
            }),
            ErrorCode::kInconsistentInputs);
}

TEST(Cases, RoundTripAndLabelCheck) {
  SelfVerifyCase c;
  c.problem_id = "p";
  c.judge_solver_correct = false;
  c.verifier_verdict = V::kReject;
  c.judge_reasoning_valid = false;
  c.label = CaseLabel::kLuckyCatch;
  auto j = c.to_json();
  EXPECT_EQ(SelfVerifyCase::from_json(j).to_json(), j);
  j["label"] = "TP";
  EXPECT_EQ(error_code_of([&] { SelfVerifyCase::from_json(j); }), ErrorCode::kSchemaViolation);
}

}  // namespace
}  // namespace claimgate::selfverify
