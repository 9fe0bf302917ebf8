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

#include "claimgate/graphgen/screen.hpp"
#include "graphgen/worked_examples.hpp"

namespace claimgate::graphgen {
namespace {

using testing::worked_examples;

TEST(EntityScreen, WorkedNegativesIntroduceNothingNew) {
  for (const auto& w : worked_examples()) {
    auto claim = w.corruption.at("infeasible_claim").get<std::string>();
    EXPECT_EQ(unknown_entities(claim, screen_reference(w.source, w.graph)),
              std::vector<std::string>{})
        << w.name;
  }
}

TEST(EntityScreen, FlagsNewNamesAndNumbers) {
  const std::string ref = "The rot10_std5_prob0.5 model reaches 0.37 mAP at level_3.";
  EXPECT_EQ(unknown_entities("The model beats ResNet-50 at level_3.", ref),
            std::vector<std::string>{"ResNet-50"});
  EXPECT_EQ(unknown_entities("It reaches 0.42 mAP.", ref), std::vector<std::string>{"0.42"});
  EXPECT_TRUE(unknown_entities("It reaches 0.37 mAP.", ref).empty());
  EXPECT_TRUE(unknown_entities("Overall the model is strong at level_3.", ref).empty());
  EXPECT_EQ(unknown_entities("Results at level_7 hold.", ref), std::vector<std::string>{"level_7"});
}

TEST(EntityScreen, CaseFolded) {
  EXPECT_TRUE(unknown_entities("Using TVmax helps.", "the tvmax layer").empty());
}

TEST(SingleStepCover, ClaimRestatingOneUnitIsCovered) {
  std::vector<std::string> units = {"Primary tumor must be larger than 2 cm.",
                                    "Only Japanese women are eligible."};
  auto cover = single_step_cover("Only Japanese women are eligible", units);
  ASSERT_TRUE(cover);
  EXPECT_EQ(*cover, units[1]);
  EXPECT_FALSE(single_step_cover("Japanese women with tumors larger than 2 cm are eligible", units));
}

TEST(SingleStepCover, WorkedNegativesNeedSeveralUnits) {
  for (const auto& w : worked_examples()) {
    auto claim = w.corruption.at("infeasible_claim").get<std::string>();
    EXPECT_FALSE(single_step_cover(claim, evidence_units(w.source, w.graph))) << w.name;
  }
}

TEST(EvidenceUnits, IncludeRowsSentencesAndObservations) {
  for (const auto& w : worked_examples()) {
    auto units = evidence_units(w.source, w.graph);
    for (const auto* o : w.graph.layer(Layer::kObservation)) {
      EXPECT_NE(std::find(units.begin(), units.end(), o->text), units.end()) << o->id;
    }
    if (w.name == "table") EXPECT_GE(units.size(), 5u + 8u);
  }
}

}  // namespace
}  // namespace claimgate::graphgen
