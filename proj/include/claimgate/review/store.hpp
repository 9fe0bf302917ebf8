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

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "claimgate/eval/dataset.hpp"
#include "claimgate/graphgen/generator.hpp"

namespace claimgate::review {

using graphgen::CandidateStatus;
using graphgen::Domain;

enum class Decision { kAccept, kRejectAmbiguous, kRejectInvalid };
const char* to_string(Decision d);  // accept, reject_ambiguous, reject_invalid
Decision decision_from_string(const std::string& s);
CandidateStatus status_after(Decision d);

struct ReviewDecision {
  std::string candidate_id;
  Decision decision = Decision::kAccept;
  std::optional<std::string> note;
  std::string timestamp;  // filled in by decide() when empty
  std::string annotator;

  Json to_json() const;
  static ReviewDecision from_json(const Json& j);
};

struct DomainStats {
  std::size_t generated = 0;
  std::size_t pending = 0;
  std::size_t accepted = 0;
  std::size_t rejected_ambiguous = 0;
  std::size_t rejected_invalid = 0;

  // accepted / generated as a percentage rounded to one decimal; absent
  // when nothing was generated.
  std::optional<double> acceptance_rate() const;
  Json to_json() const;
};

struct ReviewStats {
  std::map<Domain, DomainStats> domains;
  DomainStats total;
  Json to_json() const;
};

struct CandidateFilter {
  std::optional<CandidateStatus> status;
  std::optional<Domain> domain;
  std::size_t page = 1;  // 1-based
  std::size_t page_size = 50;
};

struct CandidatePage {
  std::vector<Json> items;  // summaries
  std::size_t total = 0;
  std::size_t page = 1;
  std::size_t page_size = 50;
  Json to_json() const;
};

struct DecideResult {
  CandidateStatus status = CandidateStatus::kPending;
  bool changed = false;  // false for a repeat of the effective decision
};

struct StoreOptions {
  std::filesystem::path ledger;  // append-only JSONL event log
  std::optional<std::filesystem::path> snapshot;
  std::size_t snapshot_every = 200;  // events between automatic snapshots; 0 disables
};

// Event-sourced candidate store. Every mutation appends one event to the
// ledger before the in-memory state changes; opening a store replays the
// snapshot (if it matches the ledger prefix) and then the remaining events.
// Reads may run concurrently; writes are serialized.
class ReviewStore {
 public:
  explicit ReviewStore(StoreOptions options);

  // Errors: gating-violation (whole batch refused) when any candidate failed
  // its self-check. Duplicate ids are skipped.
  std::size_t enqueue(std::span<const graphgen::CandidateHardNegative> candidates);

  // Errors: unknown-candidate; conflict when expected_status is given and
  // differs from the current status. Repeating the effective decision
  // (same decision, note and annotator) writes nothing.
  DecideResult decide(ReviewDecision decision, std::optional<CandidateStatus> expected_status = std::nullopt);

  // Moves rejected_ambiguous candidates back to pending. Returns the count.
  std::size_t requeue_rejected(const std::string& annotator);

  ReviewStats stats() const;
  CandidatePage list(const CandidateFilter& filter) const;
  // Full view: candidate, corruption diff and decision history. Errors:
  // unknown-candidate.
  Json view(const std::string& id) const;
  std::optional<std::filesystem::path> image_path(const std::string& id) const;
  CandidateStatus status(const std::string& id) const;
  std::vector<ReviewDecision> history(const std::string& id) const;
  std::size_t size() const;
  std::size_t events() const;

  // Accepted candidates of one domain as adv_neg records with their
  // uncorrupted graph, in enqueue order.
  std::vector<eval::DatasetRecord> accepted_records(Domain domain) const;
  // Writes the records plus <path>.manifest.json. Returns the record count.
  std::size_t export_accepted(Domain domain, const std::filesystem::path& path) const;

  void write_snapshot() const;
  // Status of every candidate after replaying a ledger from empty.
  static std::map<std::string, CandidateStatus> replay_statuses(const std::filesystem::path& ledger);
  std::map<std::string, CandidateStatus> statuses() const;

 private:
  struct Entry {
    graphgen::CandidateHardNegative candidate;
    std::vector<ReviewDecision> history;
  };

  void apply(const Json& event);
  void append(const Json& event);
  void write_snapshot_locked() const;
  const Entry& entry(const std::string& id) const;

  StoreOptions options_;
  mutable std::shared_mutex mu_;
  std::vector<std::string> order_;
  std::map<std::string, Entry> entries_;
  std::size_t events_ = 0;
};

}  // namespace claimgate::review
