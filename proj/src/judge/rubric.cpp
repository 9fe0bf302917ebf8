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

#include "claimgate/judge/rubric.hpp"

#include <cctype>
#include <cmath>
#include <mutex>
#include <set>

#include "claimgate/common/error.hpp"
#include "claimgate/common/io.hpp"
#include "claimgate/common/parallel.hpp"

namespace claimgate::judge {

namespace fs = std::filesystem;

const char* to_string(Dimension d) {
  switch (d) {
    case Dimension::kConstraintEnumeration: return "constraint_enumeration";
    case Dimension::kNonSalientCoverage: return "non_salient_coverage";
    case Dimension::kEvidenceBoundary: return "evidence_boundary";
    case Dimension::kVerdictWarrant: return "verdict_warrant";
  }
  return "";
}

const char* display_name(Dimension d) {
  switch (d) {
    case Dimension::kConstraintEnumeration: return "Constraint enumeration";
    case Dimension::kNonSalientCoverage: return "Non-salient coverage";
    case Dimension::kEvidenceBoundary: return "Evidence boundary";
    case Dimension::kVerdictWarrant: return "Verdict warrant";
  }
  return "";
}

Anchor anchor(Dimension d) {
  switch (d) {
    case Dimension::kConstraintEnumeration:
      return {"Checks one prominent constraint", "Lists all constraints before checking any"};
    case Dimension::kNonSalientCoverage:
      return {"Stops at salient constraint", "Checks non-salient and composed constraints"};
    case Dimension::kEvidenceBoundary:
      return {"Accepts on local consistency", "Rejects when scope exceeds evidence"};
    case Dimension::kVerdictWarrant:
      return {"Notes gaps but accepts", "Verdict follows from all gaps"};
  }
  return {"", ""};
}

double aggregate_score(const DimensionScores& scores) {
  int sum = 0;
  for (int s : scores) sum += s;
  return (sum + 8) / 16.0 * 100.0;
}

Json TraceScore::to_json() const {
  Json dims = Json::object();
  for (std::size_t i = 0; i < kDimensions.size(); ++i) dims[to_string(kDimensions[i])] = scores[i];
  return {{"record_id", record_id},
          {"claim_class", eval::to_string(claim_class)},
          {"verdict_correct", verdict_correct},
          {"scores", dims},
          {"aggregate", aggregate()},
          {"warnings", warnings},
          {"raw", raw}};
}

TraceScore TraceScore::from_json(const Json& j) {
  TraceScore t;
  try {
    t.record_id = j.at("record_id").get<std::string>();
    t.claim_class = eval::claim_class_from_string(j.at("claim_class").get<std::string>());
    t.verdict_correct = j.at("verdict_correct").get<bool>();
    for (std::size_t i = 0; i < kDimensions.size(); ++i) {
      t.scores[i] = j.at("scores").at(to_string(kDimensions[i])).get<int>();
    }
    t.warnings = j.value("warnings", std::vector<std::string>{});
    t.raw = j.value("raw", "");
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kSchemaViolation, std::string("trace score: ") + e.what());
  }
  return t;
}

std::string judge_prompt(const std::string& trace, const std::string& evidence, const std::string& claim) {
  std::string t =
      "You are grading how a model verified a claim against evidence. Read its reasoning trace "
      "and score four dimensions on the integer scale -2..+2, where -2 means salient-constraint "
      "checking (the model tests one prominent constraint and stops) and +2 means full "
      "closed-world verification (every constraint in the claim, including non-salient and "
      "composed ones, is checked against the evidence). Use intermediate values for partial "
      "behaviour. Score the reasoning, not whether the final verdict is right.\n\n"
      "Rubric (dimension: -2 anchor | +2 anchor)\n";
  for (auto d : kDimensions) {
    auto a = anchor(d);
    t += std::string("- ") + display_name(d) + ": " + a.salient + " | " + a.full_cwa + "\n";
  }
  t += "\nEvidence:\n" + evidence + "\n\nClaim: " + claim + "\n\nReasoning trace:\n" + trace + "\n\n";
  t += "Return only a JSON object with integer fields";
  for (std::size_t i = 0; i < kDimensions.size(); ++i) {
    t += std::string(i ? ", " : " ") + to_string(kDimensions[i]);
  }
  t += ".\n";
  return t;
}

namespace {

std::string squash(const std::string& s) {
  std::string out;
  for (unsigned char c : s)
    if (std::isalnum(c)) out += static_cast<char>(std::tolower(c));
  return out;
}

std::optional<std::size_t> dimension_index(const std::string& key) {
  std::string k = squash(key);
  for (std::size_t i = 0; i < kDimensions.size(); ++i) {
    if (k == squash(to_string(kDimensions[i]))) return i;
  }
  return std::nullopt;
}

int checked_score(double value, Dimension d, std::vector<std::string>& warnings) {
  if (!std::isfinite(value) || value < -2.0 || value > 2.0) {
    throw Error(ErrorCode::kJudgeParseFailure,
                std::string(to_string(d)) + " score out of range: " + std::to_string(value));
  }
  double r = std::round(value);
  if (r != value) {
    warnings.push_back(std::string(to_string(d)) + " score " + std::to_string(value) +
                       " rounded to " + std::to_string(static_cast<int>(r)));
  }
  return static_cast<int>(r);
}

std::optional<double> number_from(const Json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return std::stod(v.get<std::string>());
    } catch (...) {
    }
  }
  if (v.is_object() && v.contains("score")) return number_from(v["score"]);
  return std::nullopt;
}

}  // namespace

ParsedJudgeReply parse_judge_reply(const std::string& reply) {
  ParsedJudgeReply out;
  std::array<std::optional<double>, 4> found;

  if (auto j = extract_json_object(reply)) {
    const Json* obj = &*j;
    if (j->contains("scores") && (*j)["scores"].is_object()) obj = &(*j)["scores"];
    for (const auto& [key, value] : obj->items()) {
      auto idx = dimension_index(key);
      if (!idx) continue;
      auto n = number_from(value);
      if (!n) {
        throw Error(ErrorCode::kJudgeParseFailure, "score for " + key + " is not a number");
      }
      found[*idx] = *n;
    }
  } else {
    std::size_t start = 0;
    while (start < reply.size()) {
      auto end = reply.find('\n', start);
      if (end == std::string::npos) end = reply.size();
      std::string line = reply.substr(start, end - start);
      start = end + 1;
      auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      auto idx = dimension_index(line.substr(0, colon));
      if (!idx) continue;
      std::string rest = line.substr(colon + 1);
      auto b = rest.find_first_of("+-0123456789.");
      if (b == std::string::npos) continue;
      try {
        found[*idx] = std::stod(rest.substr(b));
      } catch (...) {
      }
    }
  }

  for (std::size_t i = 0; i < kDimensions.size(); ++i) {
    if (!found[i]) {
      throw Error(ErrorCode::kJudgeParseFailure,
                  std::string("judge reply has no score for ") + to_string(kDimensions[i]));
    }
    out.scores[i] = checked_score(*found[i], kDimensions[i], out.warnings);
  }
  return out;
}

namespace {

llm::ChatRequest judge_request(const std::string& trace, const std::string& evidence,
                               const std::string& claim, const llm::ModelHandle& judge,
                               const std::optional<fs::path>& image) {
  llm::ChatRequest req;
  req.handle = judge;
  req.cache_salt = "judge";
  req.messages.push_back({llm::Role::kUser, judge_prompt(trace, evidence, claim), image});
  return req;
}

}  // namespace

TraceScore judge_trace(llm::Gateway& gateway, const std::string& trace, const std::string& evidence,
                       const std::string& claim, const llm::ModelHandle& judge,
                       const std::optional<fs::path>& image) {
  if (trace.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw Error(ErrorCode::kEmptyInput, "reasoning trace is empty");
  }
  TraceScore t;
  t.raw = gateway.complete(judge_request(trace, evidence, claim, judge, image)).text;
  try {
    auto parsed = parse_judge_reply(t.raw);
    t.scores = parsed.scores;
    t.warnings = std::move(parsed.warnings);
  } catch (const Error& e) {
    throw Error(e.code(), std::string(e.what()) + "; raw reply: " + t.raw);
  }
  return t;
}

std::vector<TraceScore> load_scores(const fs::path& path) {
  std::vector<TraceScore> out;
  for_each_jsonl(path, [&](std::size_t, const Json& j) { out.push_back(TraceScore::from_json(j)); });
  return out;
}

JudgeReport judge_outcomes(llm::Gateway& gateway, std::span<const eval::EvalOutcome> outcomes,
                           const eval::Dataset& dataset, const llm::ModelHandle& judge,
                           const JudgeOptions& options) {
  std::map<std::string, const eval::DatasetRecord*> records;
  for (const auto& r : dataset.records) records[r.id] = &r;

  JudgeReport report;
  std::map<std::string, TraceScore> done;
  fs::path scores_path, failures_path;
  if (options.out_dir) {
    fs::create_directories(*options.out_dir);
    scores_path = *options.out_dir / "scores.jsonl";
    failures_path = *options.out_dir / "failures.jsonl";
    if (fs::exists(scores_path)) {
      for (auto& s : load_scores(scores_path)) {
        auto id = s.record_id;
        done.insert_or_assign(id, std::move(s));
      }
    }
  }

  std::vector<const eval::EvalOutcome*> todo;
  std::vector<const eval::EvalOutcome*> selected;
  for (const auto& o : outcomes) {
    if (options.negatives_only && o.claim_class != eval::ClaimClass::kStandardNeg &&
        o.claim_class != eval::ClaimClass::kAdvNeg) {
      continue;
    }
    if (!records.count(o.record_id)) {
      throw Error(ErrorCode::kInconsistentInputs, "outcome " + o.record_id + " is not in the dataset");
    }
    selected.push_back(&o);
    if (done.count(o.record_id)) {
      ++report.resumed;
    } else {
      todo.push_back(&o);
    }
  }
  if (selected.empty()) throw Error(ErrorCode::kEmptyInput, "no outcomes to judge");

  std::mutex mu;
  parallel_for(todo.size(), options.workers, [&](std::size_t i) {
    const auto& o = *todo[i];
    const auto& r = *records.at(o.record_id);
    std::string raw;
    try {
      if (o.reasoning_trace.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw Error(ErrorCode::kEmptyInput, "reasoning trace is empty");
      }
      raw = gateway
                .complete(judge_request(o.reasoning_trace, graphgen::evidence_text(r.evidence), r.claim,
                                        judge, graphgen::evidence_image(r.evidence)))
                .text;
      auto parsed = parse_judge_reply(raw);
      TraceScore t;
      t.record_id = o.record_id;
      t.claim_class = o.claim_class;
      t.verdict_correct = o.correct();
      t.scores = parsed.scores;
      t.warnings = std::move(parsed.warnings);
      t.raw = raw;
      std::lock_guard lock(mu);
      if (options.out_dir) append_line(scores_path, t.to_json().dump());
      done.insert_or_assign(o.record_id, std::move(t));
    } catch (const Error& e) {
      std::lock_guard lock(mu);
      report.failures.push_back({o.record_id, std::string(e.code_name()), e.what(), raw});
    }
  });

  for (const auto* o : selected) {
    auto it = done.find(o->record_id);
    if (it != done.end()) report.scores.push_back(it->second);
  }
  std::sort(report.failures.begin(), report.failures.end(),
            [](const JudgeFailure& a, const JudgeFailure& b) { return a.record_id < b.record_id; });
  if (options.out_dir) {
    std::vector<Json> rows;
    for (const auto& s : report.scores) rows.push_back(s.to_json());
    write_jsonl(scores_path, rows);
    std::vector<Json> fails;
    for (const auto& f : report.failures) {
      fails.push_back({{"record_id", f.record_id}, {"code", f.code}, {"message", f.message}, {"raw", f.raw}});
    }
    write_jsonl(failures_path, fails);
  }
  return report;
}

}  // namespace claimgate::judge
