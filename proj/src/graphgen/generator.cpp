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

#include "claimgate/graphgen/generator.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "claimgate/common/error.hpp"
#include "claimgate/common/parallel.hpp"
#include "claimgate/graphgen/screen.hpp"

namespace claimgate::graphgen {

namespace fs = std::filesystem;
using llm::ChatMessage;
using llm::ChatRequest;
using llm::ModelHandle;
using llm::Role;

Json CorruptionRecord::to_json() const {
  return {{"target_node_id", target_node_id},
          {"operation", to_string(operation)},
          {"original_text", original_text},
          {"corrupted_text", corrupted_text},
          {"propagation_notes", propagation_notes}};
}

CorruptionRecord CorruptionRecord::from_json(const Json& j) {
  CorruptionRecord r;
  r.target_node_id = j.at("target_node_id").get<std::string>();
  auto op = corruption_op_from_string(j.at("operation").get<std::string>());
  if (!op) throw Error(ErrorCode::kSchemaViolation, "unknown corruption operation");
  r.operation = *op;
  r.original_text = j.at("original_text").get<std::string>();
  r.corrupted_text = j.at("corrupted_text").get<std::string>();
  r.propagation_notes = j.value("propagation_notes", "");
  return r;
}

Json SelfCheck::to_json() const {
  Json j = {{"locally_plausible", locally_plausible},
            {"not_single_step_falsifiable", not_single_step_falsifiable},
            {"compositionally_refutable", compositionally_refutable},
            {"no_new_entities", no_new_entities},
            {"not_obviously_false", not_obviously_false},
            {"unknown_entities", unknown_entities}};
  if (single_step_unit) j["single_step_unit"] = *single_step_unit;
  if (parse_error) j["parse_error"] = *parse_error;
  return j;
}

SelfCheck SelfCheck::from_json(const Json& j) {
  SelfCheck s;
  s.locally_plausible = j.value("locally_plausible", false);
  s.not_single_step_falsifiable = j.value("not_single_step_falsifiable", false);
  s.compositionally_refutable = j.value("compositionally_refutable", false);
  s.no_new_entities = j.value("no_new_entities", false);
  s.not_obviously_false = j.value("not_obviously_false", false);
  s.unknown_entities = j.value("unknown_entities", std::vector<std::string>{});
  if (j.contains("single_step_unit")) s.single_step_unit = j["single_step_unit"].get<std::string>();
  if (j.contains("parse_error")) s.parse_error = j["parse_error"].get<std::string>();
  return s;
}

const char* to_string(CandidateStatus s) {
  switch (s) {
    case CandidateStatus::kPending: return "pending";
    case CandidateStatus::kAccepted: return "accepted";
    case CandidateStatus::kRejectedAmbiguous: return "rejected_ambiguous";
    case CandidateStatus::kRejectedInvalid: return "rejected_invalid";
  }
  return "pending";
}

CandidateStatus candidate_status_from_string(const std::string& s) {
  for (auto st : {CandidateStatus::kPending, CandidateStatus::kAccepted,
                  CandidateStatus::kRejectedAmbiguous, CandidateStatus::kRejectedInvalid}) {
    if (s == to_string(st)) return st;
  }
  throw Error(ErrorCode::kSchemaViolation, "unknown candidate status '" + s + "'");
}

Json CandidateHardNegative::to_json() const {
  return {{"id", id},
          {"source_id", source.id},
          {"domain", to_string(source.domain)},
          {"source", source.to_json()},
          {"graph", graph.to_json()},
          {"corruption", corruption.to_json()},
          {"infeasible_claim", infeasible_claim},
          {"self_check", self_check.to_json()},
          {"status", to_string(status)},
          {"generator", generator.to_json()}};
}

CandidateHardNegative CandidateHardNegative::from_json(const Json& j) {
  CandidateHardNegative c;
  try {
    c.id = j.at("id").get<std::string>();
    c.source = SourceRecord::from_json(j.at("source"));
    c.graph = ReasoningGraph::from_json(j.at("graph"));
    c.corruption = CorruptionRecord::from_json(j.at("corruption"));
    c.infeasible_claim = j.at("infeasible_claim").get<std::string>();
    c.self_check = SelfCheck::from_json(j.at("self_check"));
    c.status = candidate_status_from_string(j.value("status", "pending"));
    if (j.contains("generator")) c.generator = ModelHandle::from_json(j.at("generator"));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kSchemaViolation, std::string("candidate: ") + e.what());
  }
  return c;
}

namespace {

ChatRequest request_for(const SourceRecord& source, const ModelHandle& handle, std::string prompt,
                        std::string salt) {
  ChatRequest r;
  r.handle = handle;
  r.cache_salt = std::move(salt);
  r.messages.push_back(ChatMessage{Role::kUser, std::move(prompt), evidence_image(source.evidence)});
  return r;
}

std::string attempt_salt(const std::string& base, int attempt) {
  if (attempt == 1) return base;
  return base + (base.empty() ? "" : "/") + "attempt-" + std::to_string(attempt);
}

void log_attempt(const GenerationOptions& o, const char* stage, const std::string& source_id,
                 int attempt, const std::string& raw, const std::string& error) {
  if (!o.log) return;
  Json j = {{"stage", stage}, {"source_id", source_id}, {"attempt", attempt}, {"raw", raw}};
  j["error"] = error.empty() ? Json() : Json(error);
  o.log(j);
}

}  // namespace

ReasoningGraph build_graph(llm::Gateway& gateway, const SourceRecord& source,
                           const ModelHandle& generator, const GenerationOptions& options) {
  std::string last_error;
  for (int attempt = 1; attempt <= std::max(1, options.max_attempts); ++attempt) {
    auto response = gateway.complete(request_for(
        source, generator, graph_prompt(source), attempt_salt("graph/" + options.salt, attempt)));
    std::string error;
    auto json = extract_json_object(response.text);
    if (!json) {
      error = "reply contains no JSON object";
    } else {
      try {
        ReasoningGraph g = ReasoningGraph::from_json(*json);
        g.source_id = source.id;
        auto v = validate_graph(g, Strictness::kGeneration);
        if (v.ok()) {
          log_attempt(options, "graph", source.id, attempt, response.text, "");
          return g;
        }
        error = "graph violates";
        for (const auto& issue : v.violations) {
          error += " " + issue.rule + (issue.node_id.empty() ? "" : "@" + issue.node_id);
        }
      } catch (const Error& e) {
        error = e.what();
      }
    }
    log_attempt(options, "graph", source.id, attempt, response.text, error);
    last_error = error;
  }
  throw Error(ErrorCode::kGenerationParseFailure,
              "graph for source '" + source.id + "' unusable after " +
                  std::to_string(options.max_attempts) + " attempts: " + last_error);
}

CorruptionResult corrupt(llm::Gateway& gateway, const ReasoningGraph& graph,
                         const SourceRecord& source, const ModelHandle& generator,
                         const std::optional<std::string>& target,
                         const std::optional<CorruptionOp>& op, const GenerationOptions& options) {
  if (target) {
    const GraphNode* node = graph.find(*target);
    if ((node && node->layer == Layer::kObservation) || (!node && !target->empty() && (*target)[0] == 'O')) {
      throw Error(ErrorCode::kTargetIsObservation,
                  "observation node " + *target + " cannot be corrupted");
    }
    if (!node) throw Error(ErrorCode::kInvalidRequest, "graph has no node " + *target);
  }
  const std::string reference = screen_reference(source, graph);
  const std::string prompt = corruption_prompt(source, graph, target, op);
  std::string last_error;
  bool last_was_observation = false;

  for (int attempt = 1; attempt <= std::max(1, options.max_attempts); ++attempt) {
    auto response = gateway.complete(
        request_for(source, generator, prompt, attempt_salt("corrupt/" + options.salt, attempt)));
    std::string error;
    last_was_observation = false;
    auto json = extract_json_object(response.text);
    try {
      if (!json) throw std::runtime_error("reply contains no JSON object");
      std::string node_id = json->value("target_node_id", "");
      std::string text = json->value("corrupted_node_text", "");
      std::string claim = json->value("infeasible_claim", "");
      const GraphNode* node = graph.find(node_id);
      if (!node) throw std::runtime_error("target_node_id '" + node_id + "' is not in the graph");
      if (node->layer == Layer::kObservation) {
        last_was_observation = true;
        throw std::runtime_error("reply corrupts observation node " + node_id);
      }
      if (target && node_id != *target) {
        throw std::runtime_error("reply corrupts " + node_id + " instead of " + *target);
      }
      if (text.empty() || text == node->text) {
        throw std::runtime_error("corrupted_node_text is empty or unchanged");
      }
      if (claim.empty()) throw std::runtime_error("infeasible_claim is empty");
      auto parsed_op = corruption_op_from_string(json->value("operation", ""));
      if (op) parsed_op = op;
      if (!parsed_op) throw std::runtime_error("operation is not a known corruption operation");
      auto unknown = unknown_entities(claim, reference);
      if (!unknown.empty()) {
        std::string list;
        for (const auto& u : unknown) list += " " + u;
        throw std::runtime_error("claim introduces entities absent from graph and evidence:" + list);
      }

      CorruptionResult result;
      result.record = {node_id, *parsed_op, node->text, text, json->value("propagation_notes", "")};
      result.infeasible_claim = claim;
      result.corrupted_graph = graph;
      result.corrupted_graph.find(node_id)->text = text;
      log_attempt(options, "corrupt", source.id, attempt, response.text, "");
      return result;
    } catch (const Json::exception& e) {
      error = std::string("malformed reply: ") + e.what();
    } catch (const std::runtime_error& e) {
      error = e.what();
    }
    log_attempt(options, "corrupt", source.id, attempt, response.text, error);
    last_error = error;
  }
  throw Error(last_was_observation ? ErrorCode::kTargetIsObservation
                                   : ErrorCode::kGenerationParseFailure,
              "corruption for source '" + source.id + "' failed after " +
                  std::to_string(options.max_attempts) + " attempts: " + last_error);
}

SelfCheck self_check(llm::Gateway& gateway, const SourceRecord& source, const ReasoningGraph& graph,
                     const std::string& claim, const ModelHandle& checker) {
  auto response = gateway.complete(
      request_for(source, checker, self_check_prompt(source, graph, claim), "self-check"));
  SelfCheck s;
  if (auto j = extract_json_object(response.text)) {
    auto flag = [&](const char* key) {
      auto it = j->find(key);
      return it != j->end() && it->is_boolean() && it->get<bool>();
    };
    s.locally_plausible = flag("locally_plausible");
    s.not_single_step_falsifiable = flag("not_single_step_falsifiable");
    s.compositionally_refutable = flag("compositionally_refutable");
    s.no_new_entities = flag("no_new_entities");
    s.not_obviously_false = flag("not_obviously_false");
  } else {
    s.parse_error = "checker reply contains no JSON object";
  }
  s.unknown_entities = unknown_entities(claim, screen_reference(source, graph));
  if (!s.unknown_entities.empty()) s.no_new_entities = false;
  s.single_step_unit = single_step_cover(claim, evidence_units(source, graph));
  if (s.single_step_unit) s.not_single_step_falsifiable = false;
  return s;
}

Rephrased rephrase_negative(llm::Gateway& gateway, const std::string& claim, RephraseStyle style,
                            const ModelHandle& rephraser) {
  if (claim.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw Error(ErrorCode::kEmptyInput, "cannot rephrase an empty claim");
  }
  ChatRequest r;
  r.handle = rephraser;
  r.cache_salt = std::string("rephrase/") + to_string(style);
  r.messages.push_back({Role::kUser, rephrase_prompt(claim, style), std::nullopt});
  std::string text = gateway.complete(r).text;
  auto b = text.find_first_not_of(" \t\r\n\"");
  auto e = text.find_last_not_of(" \t\r\n\"");
  text = b == std::string::npos ? "" : text.substr(b, e - b + 1);
  if (text.empty()) throw Error(ErrorCode::kProviderError, "rephraser returned empty text");
  return {claim, text, style};
}

namespace {

struct Manifest {
  std::set<std::string> generated;
  Json model_profile;
  Json checker_profile;
  std::string prompt_hash;
  std::size_t per_source = 1;

  Json to_json(const std::vector<SourceRecord>& order) const {
    Json ids = Json::array();
    std::set<std::string> listed;
    for (const auto& s : order) {
      if (generated.count(s.id)) {
        ids.push_back(s.id);
        listed.insert(s.id);
      }
    }
    for (const auto& id : generated)
      if (!listed.count(id)) ids.push_back(id);
    return {{"generated_source_ids", ids},
            {"model_profile", model_profile},
            {"checker_profile", checker_profile},
            {"prompt_hash", prompt_hash},
            {"per_source", per_source}};
  }
};

}  // namespace

PoolReport generate_pool(llm::Gateway& gateway, const std::vector<SourceRecord>& sources,
                         const PoolOptions& options) {
  if (sources.empty()) throw Error(ErrorCode::kEmptyInput, "no source records to generate from");
  if (options.per_source == 0) throw Error(ErrorCode::kUsage, "per_source must be at least 1");
  fs::create_directories(options.out_dir);
  PoolReport report;
  report.sources = sources.size();
  report.candidates_path = options.out_dir / "candidates.jsonl";
  report.manifest_path = options.out_dir / "manifest.json";
  report.failures_path = options.out_dir / "failures.json";
  const fs::path attempts_path = options.out_dir / "attempts.jsonl";
  const ModelHandle checker = options.checker.value_or(options.generator);

  Manifest manifest;
  manifest.model_profile = options.generator.to_json();
  manifest.checker_profile = checker.to_json();
  manifest.prompt_hash = prompt_hash();
  manifest.per_source = options.per_source;
  if (fs::exists(report.manifest_path)) {
    Json old = Json::parse(read_file(report.manifest_path));
    if (old.value("model_profile", Json()) != manifest.model_profile ||
        old.value("checker_profile", Json()) != manifest.checker_profile ||
        old.value("prompt_hash", "") != manifest.prompt_hash ||
        old.value("per_source", std::size_t{0}) != manifest.per_source) {
      throw Error(ErrorCode::kInconsistentInputs,
                  report.manifest_path.string() +
                      " was written with a different generator, checker, prompt set or "
                      "per-source count; use a fresh output directory");
    }
    for (const auto& id : old.at("generated_source_ids")) manifest.generated.insert(id.get<std::string>());
  }

  std::vector<const SourceRecord*> todo;
  for (const auto& s : sources) {
    if (manifest.generated.count(s.id)) {
      ++report.skipped;
    } else if (!options.max_new_sources || todo.size() < *options.max_new_sources) {
      todo.push_back(&s);
    }
  }

  std::mutex writer;  // single writer for candidates, attempts, manifest
  AttemptLog log = [&](const Json& line) {
    std::lock_guard g(writer);
    append_line(attempts_path, line.dump());
  };

  parallel_for(todo.size(), options.workers, [&](std::size_t i) {
    const SourceRecord& source = *todo[i];
    std::vector<CandidateHardNegative> made;
    try {
      GenerationOptions go{options.max_attempts, "", log};
      ReasoningGraph graph = build_graph(gateway, source, options.generator, go);
      for (std::size_t k = 1; k <= options.per_source; ++k) {
        go.salt = options.per_source == 1 ? "" : "candidate-" + std::to_string(k);
        auto result = corrupt(gateway, graph, source, options.generator, std::nullopt, std::nullopt, go);
        CandidateHardNegative c;
        c.id = source.id + "-adv" + std::to_string(k);
        c.source = source;
        c.graph = graph;
        c.corruption = result.record;
        c.infeasible_claim = result.infeasible_claim;
        c.self_check = self_check(gateway, source, graph, result.infeasible_claim, checker);
        c.generator = options.generator;
        made.push_back(std::move(c));
      }
    } catch (const Error& e) {
      std::lock_guard g(writer);
      report.failures.push_back({source.id, std::string(e.code_name()), e.what()});
      return;
    }
    std::lock_guard g(writer);
    for (const auto& c : made) append_line(report.candidates_path, c.to_json().dump());
    manifest.generated.insert(source.id);
    write_file_atomic(report.manifest_path, manifest.to_json(sources).dump(2));
    ++report.generated_sources;
    report.new_candidates += made.size();
  });

  // Canonical order (input order, then candidate index) so reruns produce
  // byte-identical files regardless of worker scheduling.
  if (fs::exists(report.candidates_path)) {
    std::map<std::string, std::size_t> rank;
    for (std::size_t i = 0; i < sources.size(); ++i) rank.emplace(sources[i].id, i);
    auto rows = read_jsonl(report.candidates_path);
    std::stable_sort(rows.begin(), rows.end(), [&](const Json& a, const Json& b) {
      auto ra = rank.count(a["source_id"]) ? rank[a["source_id"]] : sources.size();
      auto rb = rank.count(b["source_id"]) ? rank[b["source_id"]] : sources.size();
      if (ra != rb) return ra < rb;
      return a["id"].get<std::string>().size() != b["id"].get<std::string>().size()
                 ? a["id"].get<std::string>().size() < b["id"].get<std::string>().size()
                 : a["id"].get<std::string>() < b["id"].get<std::string>();
    });
    std::string body;
    for (const auto& r : rows) body += r.dump() + "\n";
    write_file_atomic(report.candidates_path, body);
  }
  if (fs::exists(report.manifest_path) || report.generated_sources > 0) {
    write_file_atomic(report.manifest_path, manifest.to_json(sources).dump(2));
  }

  std::sort(report.failures.begin(), report.failures.end(),
            [](const PoolFailure& a, const PoolFailure& b) { return a.source_id < b.source_id; });
  Json failures = Json::array();
  for (const auto& f : report.failures) {
    failures.push_back({{"source_id", f.source_id}, {"code", f.code}, {"message", f.message}});
  }
  write_file_atomic(report.failures_path, failures.dump(2));
  return report;
}

std::vector<CandidateHardNegative> load_candidates(const fs::path& path) {
  std::vector<CandidateHardNegative> out;
  for_each_jsonl(path, [&](std::size_t line, const Json& j) {
    try {
      out.push_back(CandidateHardNegative::from_json(j));
    } catch (const Error& e) {
      throw Error(e.code(), path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
  });
  return out;
}

}  // namespace claimgate::graphgen
