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

#include "claimgate/semantics/propositions.hpp"

#include <sstream>

namespace claimgate::semantics {
namespace {

class Checker {
 public:
  Checker(PropositionReport& report, const VerifierOptions& options)
      : report_(report), options_(options) {}

  void check(const CompiledEvidence& ev, bool consistent, const SymbolicClaim& claim) {
    auto a = analyze(ev, claim, options_);
    Regime regime = *a.regime;
    Verdict scc = *a.scc;
    ++report_.instances;
    ++report_.regimes[static_cast<std::size_t>(regime)];
    if (!consistent) ++report_.inconsistent_evidence;

    auto fail = [&](const char* property) {
      if (report_.counterexamples.size() < PropositionReport::kCounterexampleCap) {
        report_.counterexamples.push_back(
            {property, Instance{claim, ev.source()}, regime, a.cwa, a.owa, scc});
      }
    };

    for (const auto& c : claim.constraints) {
      auto t = ev.compile(c);
      bool some_subset = false;
      std::uint32_t subsets = 1u << ev.size();
      for (std::uint32_t mask = 0; mask < subsets && !some_subset; ++mask) {
        some_subset = ev.subset_entails(mask, t);
      }
      ++report_.cwa_subset_equivalence.checked;
      if (some_subset != ev.whole_entails(t)) {
        ++report_.cwa_subset_equivalence.violations;
        fail("cwa_subset_equivalence");
      }
    }

    if (!consistent) return;

    if (regime == Regime::kSingleConstraintInfeasible || regime == Regime::kFullySupported) {
      ++report_.single_constraint_equivalence.checked;
      if (a.cwa != scc) {
        ++report_.single_constraint_equivalence.violations;
        fail("single_constraint_equivalence");
      }
    }
    if (regime == Regime::kCompositionallyInfeasible) {
      ++report_.compositional_separation.checked;
      if (!(scc == Verdict::kAccept && a.cwa == Verdict::kReject)) {
        ++report_.compositional_separation.violations;
        fail("compositional_separation");
      }
    }
    if (a.owa == Verdict::kReject) {
      ++report_.owa_reject_implies_cwa_reject.checked;
      if (a.cwa != Verdict::kReject) {
        ++report_.owa_reject_implies_cwa_reject.violations;
        fail("owa_reject_implies_cwa_reject");
      }
    }
  }

 private:
  PropositionReport& report_;
  VerifierOptions options_;
};

Json tally_json(const PropertyTally& t) {
  return {{"checked", t.checked}, {"violations", t.violations}};
}

}  // namespace

std::uint64_t PropositionReport::total_violations() const {
  return single_constraint_equivalence.violations + compositional_separation.violations +
         cwa_subset_equivalence.violations + owa_reject_implies_cwa_reject.violations;
}

PropositionReport check_propositions(InstanceStream& stream, const VerifierOptions& options) {
  PropositionReport report;
  Checker checker(report, options);
  for (const auto& evidence : stream.evidence_sets()) {
    CompiledEvidence ev(evidence);
    bool consistent = ev.consistent();
    for (const auto& claim : stream.claims()) checker.check(ev, consistent, claim);
  }
  return report;
}

PropositionReport check_propositions(std::span<const Instance> instances,
                                     const VerifierOptions& options) {
  PropositionReport report;
  Checker checker(report, options);
  for (const auto& inst : instances) {
    CompiledEvidence ev(inst.evidence);
    checker.check(ev, ev.consistent(), inst.claim);
  }
  return report;
}

Json PropositionReport::to_json() const {
  Json regimes_json = Json::object();
  for (Regime r : kAllRegimes) regimes_json[to_string(r)] = regime_count(r);
  Json ces = Json::array();
  for (const auto& ce : counterexamples) {
    ces.push_back({{"property", ce.property},
                   {"instance", instance_to_json(ce.instance, ce.regime)},
                   {"cwa", to_string(ce.cwa)},
                   {"owa", to_string(ce.owa)},
                   {"scc", to_string(ce.scc)}});
  }
  return {{"instances", instances},
          {"inconsistent_evidence", inconsistent_evidence},
          {"regimes", std::move(regimes_json)},
          {"properties",
           {{"single_constraint_equivalence", tally_json(single_constraint_equivalence)},
            {"compositional_separation", tally_json(compositional_separation)},
            {"cwa_subset_equivalence", tally_json(cwa_subset_equivalence)},
            {"owa_reject_implies_cwa_reject", tally_json(owa_reject_implies_cwa_reject)}}},
          {"total_violations", total_violations()},
          {"counterexamples", std::move(ces)}};
}

std::string PropositionReport::to_text() const {
  std::ostringstream out;
  out << "instances: " << instances << " (inconsistent evidence: " << inconsistent_evidence
      << ")\n";
  for (Regime r : kAllRegimes) out << "  " << to_string(r) << ": " << regime_count(r) << "\n";
  auto line = [&](const char* name, const PropertyTally& t) {
    out << name << ": " << t.violations << " violations / " << t.checked << " checked\n";
  };
  line("single_constraint_equivalence", single_constraint_equivalence);
  line("compositional_separation", compositional_separation);
  line("cwa_subset_equivalence", cwa_subset_equivalence);
  line("owa_reject_implies_cwa_reject", owa_reject_implies_cwa_reject);
  for (const auto& ce : counterexamples) {
    out << "counterexample [" << ce.property << "] " << instance_to_json(ce.instance, ce.regime).dump()
        << " cwa=" << to_string(ce.cwa) << " owa=" << to_string(ce.owa)
        << " scc=" << to_string(ce.scc) << "\n";
  }
  return out.str();
}

}  // namespace claimgate::semantics
