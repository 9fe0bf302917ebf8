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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "claimgate/common/io.hpp"
#include "claimgate/semantics/enumerate.hpp"
#include "claimgate/semantics/verification.hpp"

namespace claimgate::semantics {

struct PropertyTally {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
};

struct Counterexample {
  std::string property;
  Instance instance;
  Regime regime;
  Verdict cwa;
  Verdict owa;
  Verdict scc;
};

// Properties checked per instance:
//   single_constraint_equivalence  SCI and FS instances: CWA verdict == V_s verdict
//   compositional_separation       CI instances: V_s accepts and CWA rejects
//   cwa_subset_equivalence         per constraint: some subset entails it <=> E does
//   owa_reject_implies_cwa_reject  OWA reject => CWA reject
// The first, second and fourth presuppose consistent evidence; instances with
// unsatisfiable E are counted in inconsistent_evidence and skipped for them.
struct PropositionReport {
  std::uint64_t instances = 0;
  std::uint64_t inconsistent_evidence = 0;
  std::array<std::uint64_t, 4> regimes{};  // indexed like kAllRegimes
  PropertyTally single_constraint_equivalence;
  PropertyTally compositional_separation;
  PropertyTally cwa_subset_equivalence;
  PropertyTally owa_reject_implies_cwa_reject;
  std::vector<Counterexample> counterexamples;  // first kCounterexampleCap

  static constexpr std::size_t kCounterexampleCap = 20;

  std::uint64_t regime_count(Regime r) const { return regimes[static_cast<std::size_t>(r)]; }
  std::uint64_t total_violations() const;
  bool ok() const { return total_violations() == 0; }

  Json to_json() const;
  std::string to_text() const;
};

PropositionReport check_propositions(InstanceStream& stream, const VerifierOptions& options = {});
PropositionReport check_propositions(std::span<const Instance> instances,
                                     const VerifierOptions& options = {});

}  // namespace claimgate::semantics
