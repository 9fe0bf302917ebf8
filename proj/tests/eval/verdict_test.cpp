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

#include "claimgate/eval/verdict.hpp"

namespace claimgate::eval {
namespace {

struct Case {
  const char* text;
  Verdict expected;
};

TEST(ParseVerdict, Examples) {
  const Case cases[] = {
      {"Reason: the cohort is restricted.\nVerdict: INFEASIBLE", Verdict::kInfeasible},
      {"Reason: ... Verdict: INFEASIBLE", Verdict::kInfeasible},
      {"The verdicts differ: FEASIBLE", Verdict::kUnparseable},
      {"**Verdict:** Feasible", Verdict::kFeasible},
      {"The claim seems fine.", Verdict::kUnparseable},
      {"verdict: feasible", Verdict::kFeasible},
      {"## Verdict: **INFEASIBLE**", Verdict::kInfeasible},
      {"Verdict: `FEASIBLE`", Verdict::kFeasible},
      {"Verdict:\n\n**INFEASIBLE**\n", Verdict::kInfeasible},
      {"Verdict: FEASIBLE\nOn reflection...\nVerdict: INFEASIBLE", Verdict::kInfeasible},
      {"Verdict: INFEASIBLE\nVerdict: FEASIBLE", Verdict::kFeasible},
      {"Verdict: feasible? No, INFEASIBLE.", Verdict::kInfeasible},
      {"Verdict: infeasible, not feasible", Verdict::kInfeasible},
      {"Verdict: not feasible", Verdict::kInfeasible},
      {"Verdict: unclear", Verdict::kUnparseable},
      {"Verdict: feasibleish", Verdict::kUnparseable},
      {"Final verdict: INFEASIBLE", Verdict::kInfeasible},
      {"> Verdict: Feasible\r\n", Verdict::kFeasible},
      {"Reason: INFEASIBLE things happen\nVerdict: FEASIBLE", Verdict::kFeasible},
      {"", Verdict::kUnparseable},
  };
  for (const auto& c : cases) {
    EXPECT_EQ(parse_verdict(c.text).verdict, c.expected) << c.text;
  }
}

TEST(ParseVerdict, SubclaimsAndReason) {
  auto p = parse_verdict(
      "**Subclaims:**\n"
      "1. The trial enrolls women with invasive breast cancer.\n"
      "2. Tumors larger than 2 cm are required.\n"
      "- Nationality is unrestricted.\n"
      "\n"
      "Reason: Only Japanese women are eligible.\n"
      "Verdict: INFEASIBLE\n");
  EXPECT_EQ(p.verdict, Verdict::kInfeasible);
  ASSERT_EQ(p.subclaims.size(), 3u);
  EXPECT_EQ(p.subclaims[0], "The trial enrolls women with invasive breast cancer.");
  EXPECT_EQ(p.subclaims[2], "Nationality is unrestricted.");
  EXPECT_EQ(p.reason, "Only Japanese women are eligible.");
}

TEST(ParseVerdict, TotalAndDeterministic) {
  std::mt19937 rng(7);
  const std::string alphabet = "Verdict:FEASIBLEinfeasible *_#\n\r-";
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    int len = static_cast<int>(rng() % 80);
    for (int k = 0; k < len; ++k) s += alphabet[rng() % alphabet.size()];
    auto a = parse_verdict(s);
    auto b = parse_verdict(s);
    EXPECT_EQ(a.verdict, b.verdict);
    EXPECT_EQ(a.subclaims, b.subclaims);
  }
}

TEST(ParseVerdict, Labels) {
  EXPECT_EQ(as_label(Verdict::kFeasible), Label::kFeasible);
  EXPECT_EQ(as_label(Verdict::kInfeasible), Label::kInfeasible);
  EXPECT_FALSE(as_label(Verdict::kUnparseable));
  for (auto v : {Verdict::kFeasible, Verdict::kInfeasible, Verdict::kUnparseable}) {
    EXPECT_EQ(verdict_from_string(to_string(v)), v);
  }
}

}  // namespace
}  // namespace claimgate::eval
