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

#include "claimgate/review/store.hpp"

#include <cmath>
#include <fstream>
#include <mutex>

#include "claimgate/common/error.hpp"

namespace claimgate::review {

namespace fs = std::filesystem;

const char* to_string(Decision d) {
  switch (d) {
    case Decision::kAccept: return "accept";
    case Decision::kRejectAmbiguous: return "reject_ambiguous";
    case Decision::kRejectInvalid: return "reject_invalid";
  }
  return "?";
}

Decision decision_from_string(const std::string& s) {
  for (auto d : {Decision::kAccept, Decision::kRejectAmbiguous, Decision::kRejectInvalid}) {
    if (s == to_string(d)) return d;
  }
  throw Error(ErrorCode::kInvalidRequest, "unknown decision: " + s);
}

CandidateStatus status_after(Decision d) {
  switch (d) {
    case Decision::kAccept: return CandidateStatus::kAccepted;
    case Decision::kRejectAmbiguous: return CandidateStatus::kRejectedAmbiguous;
    case Decision::kRejectInvalid: return CandidateStatus::kRejectedInvalid;
  }
  return CandidateStatus::kPending;
}

Json ReviewDecision::to_json() const {
  Json j = {{"candidate_id", candidate_id}, {"decision", to_string(decision)}};
  j["note"] = note ? Json(*note) : Json(nullptr);
  j["timestamp"] = timestamp;
  j["annotator"] = annotator;
  return j;
}

ReviewDecision ReviewDecision::from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidRequest, "decision must be a JSON object");
  ReviewDecision d;
  try {
    d.candidate_id = j.value("candidate_id", "");
    d.decision = decision_from_string(j.at("decision").get<std::string>());
    if (j.contains("note") && !j["note"].is_null()) d.note = j["note"].get<std::string>();
    d.timestamp = j.value("timestamp", "");
    d.annotator = j.value("annotator", "");
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kInvalidRequest, std::string("decision: ") + e.what());
  }
  return d;
}

std::optional<double> DomainStats::acceptance_rate() const {
  if (generated == 0) return std::nullopt;
  return std::round(1000.0 * static_cast<double>(accepted) / static_cast<double>(generated)) / 10.0;
}

Json DomainStats::to_json() const {
  auto rate = acceptance_rate();
  return {{"generated", generated},
          {"pending", pending},
          {"accepted", accepted},
          {"rejected_ambiguous", rejected_ambiguous},
          {"rejected_invalid", rejected_invalid},
          {"acceptance_rate", rate ? Json(*rate) : Json(nullptr)}};
}

Json ReviewStats::to_json() const {
  Json d = Json::object();
  for (const auto& [domain, s] : domains) d[graphgen::to_string(domain)] = s.to_json();
  return {{"domains", d}, {"total", total.to_json()}};
}

Json CandidatePage::to_json() const {
  return {{"items", items}, {"total", total}, {"page", page}, {"page_size", page_size}};
}

namespace {

void count(DomainStats& s, CandidateStatus st) {
  ++s.generated;
  switch (st) {
    case CandidateStatus::kPending: ++s.pending; break;
    case CandidateStatus::kAccepted: ++s.accepted; break;
    case CandidateStatus::kRejectedAmbiguous: ++s.rejected_ambiguous; break;
    case CandidateStatus::kRejectedInvalid: ++s.rejected_invalid; break;
  }
}

bool same_decision(const ReviewDecision& a, const ReviewDecision& b) {
  return a.decision == b.decision && a.note == b.note && a.annotator == b.annotator;
}

// Chart images are stored by absolute path so the ledger does not depend on
// the working directory of whoever replays it.
graphgen::CandidateHardNegative with_absolute_image(graphgen::CandidateHardNegative c) {
  if (auto* ch = std::get_if<graphgen::ChartEvidence>(&c.source.evidence)) {
    ch->image = fs::absolute(ch->image).lexically_normal();
  }
  return c;
}

std::size_t count_lines(const fs::path& path) {
  std::size_t n = 0;
  if (!fs::exists(path)) return n;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) n += !line.empty();
  return n;
}

}  // namespace

ReviewStore::ReviewStore(StoreOptions options) : options_(std::move(options)) {
  if (options_.ledger.empty()) throw Error(ErrorCode::kUsage, "review store needs a ledger path");
  if (options_.ledger.has_parent_path()) fs::create_directories(options_.ledger.parent_path());

  std::size_t skip = 0;
  if (options_.snapshot && fs::exists(*options_.snapshot)) {
    Json snap = Json::parse(read_file(*options_.snapshot));
    const auto snap_events = snap.at("events").get<std::size_t>();
    // A snapshot ahead of its ledger is stale or foreign; replay in full.
    if (snap_events <= count_lines(options_.ledger)) {
      for (const auto& e : snap.at("candidates")) {
        Entry entry{graphgen::CandidateHardNegative::from_json(e.at("candidate")), {}};
        for (const auto& h : e.at("history")) entry.history.push_back(ReviewDecision::from_json(h));
        auto id = entry.candidate.id;
        order_.push_back(id);
        entries_.emplace(id, std::move(entry));
      }
      events_ = snap_events;
      skip = snap_events;
    }
  }
  if (fs::exists(options_.ledger)) {
    std::size_t seen = 0;
    for_each_jsonl(options_.ledger, [&](std::size_t line, const Json& event) {
      if (seen++ < skip) return;
      try {
        apply(event);
      } catch (const Error& e) {
        throw Error(ErrorCode::kSchemaViolation,
                    options_.ledger.string() + ":" + std::to_string(line) + ": " + e.what());
      } catch (const Json::exception& e) {
        throw Error(ErrorCode::kSchemaViolation,
                    options_.ledger.string() + ":" + std::to_string(line) + ": " + e.what());
      }
      ++events_;
    });
  }
}

void ReviewStore::apply(const Json& event) {
  const auto type = event.at("type").get<std::string>();
  if (type == "enqueue") {
    auto c = graphgen::CandidateHardNegative::from_json(event.at("candidate"));
    c.status = CandidateStatus::kPending;
    if (entries_.count(c.id)) return;
    auto id = c.id;
    order_.push_back(id);
    entries_.emplace(id, Entry{std::move(c), {}});
  } else if (type == "decision") {
    auto d = ReviewDecision::from_json(event.at("decision"));
    auto it = entries_.find(d.candidate_id);
    if (it == entries_.end()) {
      throw Error(ErrorCode::kUnknownCandidate, "decision for unknown candidate " + d.candidate_id);
    }
    it->second.candidate.status = status_after(d.decision);
    it->second.history.push_back(std::move(d));
  } else if (type == "requeue") {
    auto it = entries_.find(event.at("candidate_id").get<std::string>());
    if (it == entries_.end()) throw Error(ErrorCode::kUnknownCandidate, "requeue of unknown candidate");
    it->second.candidate.status = CandidateStatus::kPending;
  } else {
    throw Error(ErrorCode::kSchemaViolation, "unknown ledger event type " + type);
  }
}

void ReviewStore::append(const Json& event) {
  append_line(options_.ledger, event.dump());
  apply(event);
  ++events_;
  if (options_.snapshot && options_.snapshot_every > 0 && events_ % options_.snapshot_every == 0) {
    write_snapshot_locked();
  }
}

std::size_t ReviewStore::enqueue(std::span<const graphgen::CandidateHardNegative> candidates) {
  for (const auto& c : candidates) {
    if (!c.self_check.passed()) {
      throw Error(ErrorCode::kGatingViolation, "candidate " + c.id + " did not pass its self-check");
    }
  }
  std::unique_lock lock(mu_);
  std::size_t added = 0;
  for (const auto& c : candidates) {
    if (entries_.count(c.id)) continue;
    auto stored = with_absolute_image(c);
    stored.status = CandidateStatus::kPending;
    append({{"type", "enqueue"}, {"timestamp", utc_timestamp()}, {"candidate", stored.to_json()}});
    ++added;
  }
  return added;
}

DecideResult ReviewStore::decide(ReviewDecision d, std::optional<CandidateStatus> expected_status) {
  std::unique_lock lock(mu_);
  auto it = entries_.find(d.candidate_id);
  if (it == entries_.end()) throw Error(ErrorCode::kUnknownCandidate, "no candidate " + d.candidate_id);
  Entry& e = it->second;
  if (!e.history.empty() && e.candidate.status == status_after(e.history.back().decision) &&
      same_decision(e.history.back(), d)) {
    return {e.candidate.status, false};
  }
  if (expected_status && *expected_status != e.candidate.status) {
    throw Error(ErrorCode::kConflict, "candidate " + d.candidate_id + " is " +
                                          graphgen::to_string(e.candidate.status) + ", not " +
                                          graphgen::to_string(*expected_status));
  }
  if (d.timestamp.empty()) d.timestamp = utc_timestamp();
  append({{"type", "decision"}, {"decision", d.to_json()}});
  return {e.candidate.status, true};
}

std::size_t ReviewStore::requeue_rejected(const std::string& annotator) {
  std::unique_lock lock(mu_);
  std::size_t n = 0;
  for (const auto& id : order_) {
    if (entries_.at(id).candidate.status != CandidateStatus::kRejectedAmbiguous) continue;
    append({{"type", "requeue"}, {"candidate_id", id}, {"annotator", annotator}, {"timestamp", utc_timestamp()}});
    ++n;
  }
  return n;
}

ReviewStats ReviewStore::stats() const {
  std::shared_lock lock(mu_);
  ReviewStats s;
  for (const auto& id : order_) {
    const auto& c = entries_.at(id).candidate;
    count(s.domains[c.source.domain], c.status);
    count(s.total, c.status);
  }
  return s;
}

namespace {

Json summary(const graphgen::CandidateHardNegative& c) {
  return {{"id", c.id},
          {"domain", graphgen::to_string(c.source.domain)},
          {"status", graphgen::to_string(c.status)},
          {"claim", c.infeasible_claim},
          {"operation", graphgen::to_string(c.corruption.operation)},
          {"target_node_id", c.corruption.target_node_id}};
}

}  // namespace

CandidatePage ReviewStore::list(const CandidateFilter& f) const {
  if (f.page == 0 || f.page_size == 0) throw Error(ErrorCode::kInvalidRequest, "page and page_size start at 1");
  std::shared_lock lock(mu_);
  CandidatePage page;
  page.page = f.page;
  page.page_size = f.page_size;
  const std::size_t first = (f.page - 1) * f.page_size;
  for (const auto& id : order_) {
    const auto& c = entries_.at(id).candidate;
    if (f.status && c.status != *f.status) continue;
    if (f.domain && c.source.domain != *f.domain) continue;
    if (page.total >= first && page.items.size() < f.page_size) page.items.push_back(summary(c));
    ++page.total;
  }
  return page;
}

const ReviewStore::Entry& ReviewStore::entry(const std::string& id) const {
  auto it = entries_.find(id);
  if (it == entries_.end()) throw Error(ErrorCode::kUnknownCandidate, "no candidate " + id);
  return it->second;
}

Json ReviewStore::view(const std::string& id) const {
  std::shared_lock lock(mu_);
  const Entry& e = entry(id);
  const auto& c = e.candidate;
  Json evidence = graphgen::evidence_to_json(c.source.evidence);
  if (evidence.contains("image")) {
    evidence.erase("image");
    evidence["image_url"] = "/candidates/" + c.id + "/image";
  }
  Json history = Json::array();
  for (const auto& d : e.history) history.push_back(d.to_json());
  // Generator identity stays out so review is blind to the model.
  return {{"id", c.id},
          {"domain", graphgen::to_string(c.source.domain)},
          {"status", graphgen::to_string(c.status)},
          {"claim", c.infeasible_claim},
          {"feasible_claim", c.source.feasible_claim},
          {"evidence", evidence},
          {"graph", c.graph.to_json()},
          {"corruption", c.corruption.to_json()},
          {"self_check", c.self_check.to_json()},
          {"history", history}};
}

std::optional<fs::path> ReviewStore::image_path(const std::string& id) const {
  std::shared_lock lock(mu_);
  return graphgen::evidence_image(entry(id).candidate.source.evidence);
}

CandidateStatus ReviewStore::status(const std::string& id) const {
  std::shared_lock lock(mu_);
  return entry(id).candidate.status;
}

std::vector<ReviewDecision> ReviewStore::history(const std::string& id) const {
  std::shared_lock lock(mu_);
  return entry(id).history;
}

std::size_t ReviewStore::size() const {
  std::shared_lock lock(mu_);
  return order_.size();
}

std::size_t ReviewStore::events() const {
  std::shared_lock lock(mu_);
  return events_;
}

std::vector<eval::DatasetRecord> ReviewStore::accepted_records(Domain domain) const {
  std::shared_lock lock(mu_);
  std::vector<eval::DatasetRecord> out;
  for (const auto& id : order_) {
    const auto& c = entries_.at(id).candidate;
    if (c.status != CandidateStatus::kAccepted || c.source.domain != domain) continue;
    eval::DatasetRecord r;
    r.id = c.id;
    r.domain = c.source.domain;
    r.evidence = c.source.evidence;
    r.claim = c.infeasible_claim;
    r.gold = eval::Label::kInfeasible;
    r.claim_class = eval::ClaimClass::kAdvNeg;
    r.graph = c.graph;
    out.push_back(std::move(r));
  }
  return out;
}

std::size_t ReviewStore::export_accepted(Domain domain, const fs::path& path) const {
  auto records = accepted_records(domain);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  eval::write_dataset(path, records);
  Json ids = Json::array();
  for (const auto& r : records) ids.push_back(r.id);
  Json manifest = {{"domain", graphgen::to_string(domain)},
                   {"claim_class", "adv_neg"},
                   {"count", records.size()},
                   {"record_ids", ids},
                   {"ledger_events", events()},
                   {"dataset_sha256", sha256_hex(read_file(path))},
                   {"exported_at", utc_timestamp()}};
  write_file_atomic(fs::path(path.string() + ".manifest.json"), manifest.dump(2));
  return records.size();
}

void ReviewStore::write_snapshot() const {
  std::shared_lock lock(mu_);
  write_snapshot_locked();
}

void ReviewStore::write_snapshot_locked() const {
  if (!options_.snapshot) return;
  Json cands = Json::array();
  for (const auto& id : order_) {
    const auto& e = entries_.at(id);
    Json history = Json::array();
    for (const auto& d : e.history) history.push_back(d.to_json());
    cands.push_back({{"candidate", e.candidate.to_json()}, {"history", history}});
  }
  write_file_atomic(*options_.snapshot, Json{{"events", events_}, {"candidates", cands}}.dump());
}

std::map<std::string, CandidateStatus> ReviewStore::replay_statuses(const fs::path& ledger) {
  return ReviewStore(StoreOptions{ledger, std::nullopt, 0}).statuses();
}

std::map<std::string, CandidateStatus> ReviewStore::statuses() const {
  std::shared_lock lock(mu_);
  std::map<std::string, CandidateStatus> out;
  for (const auto& [id, e] : entries_) out[id] = e.candidate.status;
  return out;
}

}  // namespace claimgate::review
