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

#include "claimgate/eval/run.hpp"

#include <map>
#include <mutex>
#include <set>

#include "claimgate/common/error.hpp"
#include "claimgate/common/io.hpp"
#include "claimgate/common/parallel.hpp"

namespace claimgate::eval {

namespace fs = std::filesystem;

Json EvalOutcome::to_json() const {
  return {{"record_id", record_id},
          {"domain", graphgen::to_string(domain)},
          {"claim_class", to_string(claim_class)},
          {"gold_label", to_string(gold)},
          {"condition", condition.to_json()},
          {"handle", handle.to_json()},
          {"verdict", to_string(verdict)},
          {"subclaims", subclaims},
          {"retried", retried},
          {"raw_response", raw_response},
          {"reasoning_trace", reasoning_trace}};
}

EvalOutcome EvalOutcome::from_json(const Json& j) {
  EvalOutcome o;
  try {
    o.record_id = j.at("record_id").get<std::string>();
    o.domain = graphgen::domain_from_string(j.at("domain").get<std::string>());
    o.claim_class = claim_class_from_string(j.at("claim_class").get<std::string>());
    o.gold = label_from_string(j.at("gold_label").get<std::string>());
    o.condition = EvalCondition::from_json(j.at("condition"));
    o.handle = llm::ModelHandle::from_json(j.at("handle"));
    o.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    o.subclaims = j.value("subclaims", std::vector<std::string>{});
    o.retried = j.value("retried", false);
    o.raw_response = j.value("raw_response", "");
    o.reasoning_trace = j.value("reasoning_trace", o.raw_response);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kSchemaViolation, std::string("eval outcome: ") + e.what());
  }
  return o;
}

std::vector<EvalOutcome> load_outcomes(const fs::path& path) {
  std::vector<EvalOutcome> out;
  for_each_jsonl(path, [&](std::size_t line, const Json& j) {
    try {
      out.push_back(EvalOutcome::from_json(j));
    } catch (const Error& e) {
      throw Error(e.code(), path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
  });
  return out;
}

void write_outcomes(const fs::path& path, const std::vector<EvalOutcome>& outcomes) {
  std::vector<Json> rows;
  rows.reserve(outcomes.size());
  for (const auto& o : outcomes) rows.push_back(o.to_json());
  write_jsonl(path, rows);
}

namespace {

Json manifest_json(const Dataset& d, const llm::ModelHandle& h, const EvalCondition& c) {
  return {{"dataset_hash", d.hash}, {"handle", h.to_json()}, {"condition", c.to_json()}};
}

EvalOutcome evaluate_one(llm::Gateway& gateway, const DatasetRecord& r, const llm::ModelHandle& handle,
                         const EvalCondition& condition, bool retry_unparseable) {
  EvalOutcome o;
  o.record_id = r.id;
  o.domain = r.domain;
  o.claim_class = r.claim_class;
  o.gold = r.gold;
  o.condition = condition;
  o.handle = handle;

  auto request = build_request(r, condition, handle);
  request.cache_salt = "eval/" + condition.label();
  o.raw_response = gateway.complete(request).text;
  auto parsed = parse_verdict(o.raw_response);
  if (parsed.verdict == Verdict::kUnparseable && retry_unparseable) {
    request.cache_salt += "/retry";
    o.raw_response = gateway.complete(request).text;
    parsed = parse_verdict(o.raw_response);
    o.retried = true;
  }
  o.verdict = parsed.verdict;
  o.subclaims = std::move(parsed.subclaims);
  o.reasoning_trace = o.raw_response;
  return o;
}

}  // namespace

RunReport run_eval(llm::Gateway& gateway, const Dataset& dataset, const llm::ModelHandle& handle,
                   const EvalCondition& condition, const RunOptions& options) {
  if (dataset.records.empty()) throw Error(ErrorCode::kEmptyInput, "dataset has no records");
  for (const auto& r : dataset.records) {
    if (condition.graph != GraphCondition::kNoGraph && !r.graph) {
      throw Error(ErrorCode::kMissingGraph,
                  "record " + r.id + " has no reasoning graph for " + condition.label());
    }
  }

  std::map<std::string, EvalOutcome> done;
  fs::path outcomes_path, manifest_path;
  const Json manifest = manifest_json(dataset, handle, condition);
  if (options.out_dir) {
    fs::create_directories(*options.out_dir);
    outcomes_path = *options.out_dir / "outcomes.jsonl";
    manifest_path = *options.out_dir / "manifest.json";
    if (fs::exists(manifest_path)) {
      Json old = Json::parse(read_file(manifest_path));
      old.erase("completed_record_ids");
      if (old != manifest) {
        throw Error(ErrorCode::kInconsistentInputs,
                    manifest_path.string() +
                        " belongs to another dataset, model handle or condition; use a fresh "
                        "output directory");
      }
    }
    if (fs::exists(outcomes_path)) {
      for (auto& o : load_outcomes(outcomes_path)) {
        auto id = o.record_id;
        done.insert_or_assign(id, std::move(o));
      }
    }
  }

  RunReport report;
  std::vector<const DatasetRecord*> todo;
  for (const auto& r : dataset.records) {
    if (done.count(r.id)) {
      ++report.resumed;
    } else if (!options.max_new_records || todo.size() < *options.max_new_records) {
      todo.push_back(&r);
    }
  }

  std::mutex mu;
  auto write_manifest = [&] {
    Json m = manifest;
    Json ids = Json::array();
    for (const auto& r : dataset.records)
      if (done.count(r.id)) ids.push_back(r.id);
    m["completed_record_ids"] = std::move(ids);
    write_file_atomic(manifest_path, m.dump(2));
  };
  if (options.out_dir) write_manifest();

  parallel_for(todo.size(), options.workers, [&](std::size_t i) {
    const DatasetRecord& r = *todo[i];
    try {
      EvalOutcome o = evaluate_one(gateway, r, handle, condition, options.retry_unparseable);
      std::lock_guard lock(mu);
      if (options.out_dir) append_line(outcomes_path, o.to_json().dump());
      done.insert_or_assign(r.id, std::move(o));
      ++report.queried;
    } catch (const Error& e) {
      std::lock_guard lock(mu);
      report.failures.push_back({r.id, std::string(e.code_name()), e.what()});
    }
  });

  for (const auto& r : dataset.records) {
    auto it = done.find(r.id);
    if (it != done.end()) report.outcomes.push_back(it->second);
  }
  if (options.out_dir) {
    write_outcomes(outcomes_path, report.outcomes);
    write_manifest();
  }
  std::sort(report.failures.begin(), report.failures.end(),
            [](const RecordFailure& a, const RecordFailure& b) { return a.record_id < b.record_id; });
  return report;
}

}  // namespace claimgate::eval
