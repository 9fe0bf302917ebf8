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

#include "claimgate/selfverify/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <set>

#include "claimgate/common/error.hpp"
#include "claimgate/common/parallel.hpp"

namespace claimgate::selfverify {

namespace fs = std::filesystem;

Json Problem::to_json() const { return {{"id", id}, {"statement", statement}, {"gold_answer", gold_answer}}; }

Problem Problem::from_json(const Json& j) {
  auto text = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_string() || j[key].get<std::string>().empty()) {
      throw Error(ErrorCode::kSchemaViolation, std::string("problem needs a non-empty string \"") + key + "\"");
    }
    return j[key].get<std::string>();
  };
  Problem p;
  p.id = text("id");
  p.statement = text("statement");
  // Numeric AIME answers are accepted as numbers too.
  if (j.contains("gold_answer") && j["gold_answer"].is_number()) {
    p.gold_answer = j["gold_answer"].dump();
  } else {
    p.gold_answer = text("gold_answer");
  }
  return p;
}

std::vector<Problem> load_problems(const fs::path& path) {
  std::vector<Problem> out;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  for_each_jsonl(path, [&](std::size_t line, const Json& j) {
    line_no = line;
    try {
      auto p = Problem::from_json(j);
      if (!seen.insert(p.id).second) throw Error(ErrorCode::kSchemaViolation, "duplicate problem id " + p.id);
      out.push_back(std::move(p));
    } catch (const Error& e) {
      throw Error(ErrorCode::kSchemaViolation, path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  });
  return out;
}

void require_self_verify_condition(eval::PromptCondition c) {
  if (c != eval::PromptCondition::kBaseline && c != eval::PromptCondition::kOwa &&
      c != eval::PromptCondition::kCwa) {
    throw Error(ErrorCode::kUsage,
                std::string("self-verification supports baseline, owa and cwa, not ") + eval::to_string(c));
  }
}

std::string solver_prompt(const Problem& p) {
  return "Solve the following problem. Show your work, then give the final answer on a last line of the "
         "form \"Final answer: <answer>\".\n\nProblem:\n" +
         p.statement + "\n";
}

namespace {

const char* verifier_block(eval::PromptCondition c) {
  switch (c) {
    case eval::PromptCondition::kOwa:
      return "You are under open-world assumption. Use the problem to decide whether the solution is "
             "correct. Do not reject a solution based on missing justification alone.\n";
    case eval::PromptCondition::kCwa:
      return "You are under closed-world assumption.\n"
             "- ACCEPT only if every constraint of the problem is explicitly satisfied by the solution.\n"
             "- REJECT if any step or constraint is unsupported or violated.\n"
             "An unchecked constraint counts as REJECT.\n";
    default:
      return "Use the problem to decide whether the solution is correct.\n";
  }
}

}  // namespace

std::string verifier_prompt(const Problem& p, const std::string& solver_response, eval::PromptCondition c) {
  require_self_verify_condition(c);
  std::string out =
      "Determine whether a proposed solution is CORRECT (ACCEPT) or INCORRECT (REJECT) for a problem.\n"
      "\n"
      "You are given:\n"
      "- the problem statement\n"
      "- your own earlier solution\n"
      "\n";
  out += verifier_block(c);
  out +=
      "\n"
      "Output format\n"
      "- Reason: brief explanation; when rejecting, name the exact error\n"
      "- Verdict: ACCEPT or REJECT\n"
      "\n"
      "Problem:\n";
  out += p.statement;
  out += "\n\nSolution:\n";
  out += solver_response;
  out += "\n";
  return out;
}

std::string judge_prompt(const Problem& p, const std::string& solver_response, VerifierVerdict verdict,
                         const std::string& verifier_reasoning) {
  std::string out =
      "You are grading a self-verification episode. A model solved a problem and then checked its own "
      "solution. Use the reference answer to decide:\n"
      "1. solver_correct: is the solver's final answer correct?\n"
      "2. verdict_correct: is the verifier's ACCEPT/REJECT decision correct?\n"
      "3. reasoning_valid: if the solver was wrong and the verifier rejected, does the verifier's "
      "reasoning identify the actual error in the solution? Use null otherwise.\n"
      "\n"
      "Reply with JSON only: {\"solver_correct\": true|false, \"verdict_correct\": true|false, "
      "\"reasoning_valid\": true|false|null}\n"
      "\n"
      "Problem:\n";
  out += p.statement;
  out += "\n\nReference answer: ";
  out += p.gold_answer;
  out += "\n\nSolver response:\n";
  out += solver_response;
  out += "\n\nVerifier verdict: ";
  out += verdict == VerifierVerdict::kAccept ? "ACCEPT" : "REJECT";
  out += "\nVerifier reasoning:\n";
  out += verifier_reasoning;
  out += "\n";
  return out;
}

namespace {

std::string lower(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

std::string strip_markup(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch != '*' && ch != '_' && ch != '`' && ch != '#') out += ch;
  }
  return out;
}

bool is_word_char(char ch) { return std::isalnum(static_cast<unsigned char>(ch)) != 0; }

// Position and verdict of the last standalone accept/reject word.
std::optional<VerifierVerdict> last_decision(const std::string& text) {
  std::optional<VerifierVerdict> found;
  std::size_t best = std::string::npos;
  for (auto [word, v] : {std::pair{"accept", VerifierVerdict::kAccept}, std::pair{"reject", VerifierVerdict::kReject}}) {
    std::string w = word;
    for (std::size_t pos = text.find(w); pos != std::string::npos; pos = text.find(w, pos + 1)) {
      std::size_t end = pos + w.size();
      // accepted / rejects count; acceptance / rejection do not.
      std::size_t tail = end;
      while (tail < text.size() && is_word_char(text[tail])) ++tail;
      std::string suffix = text.substr(end, tail - end);
      if (pos > 0 && is_word_char(text[pos - 1])) continue;
      if (!suffix.empty() && suffix != "s" && suffix != "ed") continue;
      if (best == std::string::npos || pos > best) {
        best = pos;
        found = v;
      }
    }
  }
  return found;
}

}  // namespace

ParsedVerifierReply parse_verifier_reply(const std::string& text) {
  ParsedVerifierReply out;
  const std::string clean = lower(strip_markup(text));
  std::size_t label = clean.rfind("verdict:");
  if (label != std::string::npos) {
    // A bare label reads the next non-empty line.
    std::string after = clean.substr(label + 8);
    std::size_t start = after.find_first_not_of(" \t\r\n");
    if (start == std::string::npos) start = after.size();
    auto v = last_decision(after.substr(start, after.find('\n', start) - start));
    if (v) {
      out.verdict = *v;
      out.parsed = true;
    }
  }
  if (!out.parsed) {
    // Fall back to a final line that is just the decision.
    std::string last_line = clean.substr(0, clean.find_last_not_of(" \t\r\n") + 1);
    last_line = last_line.substr(last_line.rfind('\n') == std::string::npos ? 0 : last_line.rfind('\n') + 1);
    std::string trimmed;
    for (char ch : last_line)
      if (is_word_char(ch)) trimmed += ch;
    if (trimmed == "accept" || trimmed == "reject") {
      out.verdict = trimmed == "accept" ? VerifierVerdict::kAccept : VerifierVerdict::kReject;
      out.parsed = true;
    }
  }
  std::string reason = text;
  std::size_t r = lower(text).rfind("reason:");
  if (r != std::string::npos) {
    reason = text.substr(r + 7);
    std::size_t v = lower(reason).find("verdict:");
    if (v != std::string::npos) reason = reason.substr(0, v);
  }
  std::size_t b = reason.find_first_not_of(" \t\r\n-*");
  std::size_t e = reason.find_last_not_of(" \t\r\n-*");
  out.reasoning = b == std::string::npos ? std::string() : reason.substr(b, e - b + 1);
  return out;
}

namespace {

std::optional<bool> boolean(const Json& v) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_string()) {
    auto s = lower(v.get<std::string>());
    if (s == "true" || s == "yes" || s == "valid" || s == "correct") return true;
    if (s == "false" || s == "no" || s == "invalid" || s == "incorrect") return false;
  }
  return std::nullopt;
}

}  // namespace

JudgeFinding parse_judge_finding(const std::string& text) {
  auto j = extract_json_object(text);
  if (!j) throw Error(ErrorCode::kJudgeParseFailure, "judge reply has no JSON object: " + text);
  JudgeFinding f;
  for (const char* key : {"solver_correct", "verdict_correct"}) {
    auto v = j->contains(key) ? boolean((*j)[key]) : std::nullopt;
    if (!v) throw Error(ErrorCode::kJudgeParseFailure, std::string("judge reply lacks boolean ") + key + ": " + text);
    (std::string(key) == "solver_correct" ? f.solver_correct : f.verdict_correct) = *v;
  }
  if (j->contains("reasoning_valid") && !(*j)["reasoning_valid"].is_null()) {
    f.reasoning_valid = boolean((*j)["reasoning_valid"]);
    if (!f.reasoning_valid) {
      throw Error(ErrorCode::kJudgeParseFailure, "reasoning_valid is neither boolean nor null: " + text);
    }
  }
  return f;
}

Json SelfVerifyCase::to_json() const {
  return {{"problem_id", problem_id},
          {"condition", condition},
          {"solver_response", solver_response},
          {"verifier_verdict", to_string(verifier_verdict)},
          {"verifier_parsed", verifier_parsed},
          {"verifier_reasoning", verifier_reasoning},
          {"judge_solver_correct", judge_solver_correct},
          {"judge_verdict_correct", judge_verdict_correct},
          {"judge_reasoning_valid", judge_reasoning_valid ? Json(*judge_reasoning_valid) : Json(nullptr)},
          {"label", to_string(label)},
          {"warnings", warnings},
          {"judge_raw", judge_raw}};
}

SelfVerifyCase SelfVerifyCase::from_json(const Json& j) {
  SelfVerifyCase c;
  c.problem_id = j.at("problem_id").get<std::string>();
  c.condition = j.value("condition", "");
  c.solver_response = j.value("solver_response", "");
  c.verifier_verdict = verifier_verdict_from_string(j.at("verifier_verdict").get<std::string>());
  c.verifier_parsed = j.value("verifier_parsed", true);
  c.verifier_reasoning = j.value("verifier_reasoning", "");
  c.judge_solver_correct = j.at("judge_solver_correct").get<bool>();
  c.judge_verdict_correct = j.value("judge_verdict_correct", false);
  if (j.contains("judge_reasoning_valid") && !j["judge_reasoning_valid"].is_null()) {
    c.judge_reasoning_valid = j["judge_reasoning_valid"].get<bool>();
  }
  c.label = case_label_from_string(j.at("label").get<std::string>());
  if (classify_case(c.judge_solver_correct, c.verifier_verdict, c.judge_reasoning_valid) != c.label) {
    throw Error(ErrorCode::kSchemaViolation, "case " + c.problem_id + " label disagrees with its judge fields");
  }
  c.warnings = j.value("warnings", std::vector<std::string>{});
  c.judge_raw = j.value("judge_raw", "");
  return c;
}

LabelCounts count_labels(std::span<const SelfVerifyCase> cases) {
  LabelCounts c;
  for (const auto& k : cases) ++c.at(k.label);
  return c;
}

SelfVerifyReport compute_self_verify_metrics(std::span<const SelfVerifyCase> cases, std::string condition) {
  return compute_self_verify_metrics(count_labels(cases), std::move(condition));
}

std::vector<SelfVerifyCase> load_cases(const fs::path& path) {
  std::vector<SelfVerifyCase> out;
  for_each_jsonl(path, [&](std::size_t line, const Json& j) {
    try {
      out.push_back(SelfVerifyCase::from_json(j));
    } catch (const Error& e) {
      throw Error(ErrorCode::kSchemaViolation, path.string() + ":" + std::to_string(line) + ": " + e.what());
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::kSchemaViolation, path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
  });
  return out;
}

namespace {

llm::ChatRequest user_request(std::string text, const llm::ModelHandle& h, std::string salt) {
  llm::ChatRequest r;
  r.messages.push_back({llm::Role::kUser, std::move(text), std::nullopt});
  r.handle = h;
  r.cache_salt = std::move(salt);
  return r;
}

SelfVerifyCase run_one(llm::Gateway& gateway, const Problem& p, const llm::ModelHandle& solver,
                       const llm::ModelHandle& verifier, const llm::ModelHandle& judge,
                       eval::PromptCondition condition) {
  SelfVerifyCase c;
  c.problem_id = p.id;
  c.condition = eval::to_string(condition);
  c.solver_response = gateway.complete(user_request(solver_prompt(p), solver, "selfverify/solve")).text;

  const std::string verify_text =
      gateway
          .complete(user_request(verifier_prompt(p, c.solver_response, condition), verifier,
                                 std::string("selfverify/verify/") + c.condition))
          .text;
  auto parsed = parse_verifier_reply(verify_text);
  c.verifier_verdict = parsed.verdict;
  c.verifier_parsed = parsed.parsed;
  c.verifier_reasoning = parsed.reasoning.empty() ? verify_text : parsed.reasoning;
  if (!parsed.parsed) c.warnings.push_back("verifier reply has no ACCEPT/REJECT label; read as accept");

  c.judge_raw = gateway
                    .complete(user_request(judge_prompt(p, c.solver_response, c.verifier_verdict,
                                                        c.verifier_reasoning),
                                           judge, std::string("selfverify/judge/") + c.condition))
                    .text;
  auto f = parse_judge_finding(c.judge_raw);
  c.judge_solver_correct = f.solver_correct;
  c.judge_verdict_correct = f.verdict_correct;
  const bool expected = (c.verifier_verdict == VerifierVerdict::kAccept) == f.solver_correct;
  if (f.verdict_correct != expected) {
    c.warnings.push_back("judge verdict_correct disagrees with solver_correct; labelled from solver_correct");
  }
  const bool needs_reasoning = !f.solver_correct && c.verifier_verdict == VerifierVerdict::kReject;
  if (needs_reasoning) {
    if (!f.reasoning_valid) {
      throw Error(ErrorCode::kJudgeParseFailure,
                  "judge gave no reasoning_valid for a rejected incorrect solution: " + c.judge_raw);
    }
    c.judge_reasoning_valid = f.reasoning_valid;
  } else if (f.reasoning_valid) {
    c.warnings.push_back("judge reasoning_valid ignored: only rejections of incorrect solutions are graded");
  }
  c.label = classify_case(c.judge_solver_correct, c.verifier_verdict, c.judge_reasoning_valid);
  return c;
}

}  // namespace

SelfVerifyRun run_self_verify(llm::Gateway& gateway, std::span<const Problem> problems,
                              const llm::ModelHandle& solver, const llm::ModelHandle& verifier,
                              const llm::ModelHandle& judge, eval::PromptCondition condition,
                              const SelfVerifyOptions& options) {
  require_self_verify_condition(condition);
  if (!options.allow_same_judge && judge.provider == solver.provider && judge.model == solver.model) {
    throw Error(ErrorCode::kUsage, "judge model " + judge.label() + " must differ from the solver model");
  }
  if (problems.empty()) throw Error(ErrorCode::kEmptyInput, "no problems to self-verify");

  const Json manifest = {{"condition", eval::to_string(condition)},
                         {"solver", solver.to_json()},
                         {"verifier", verifier.to_json()},
                         {"judge", judge.to_json()}};
  std::map<std::string, SelfVerifyCase> done;
  fs::path cases_path, failures_path, manifest_path;
  if (options.out_dir) {
    fs::create_directories(*options.out_dir);
    cases_path = *options.out_dir / "cases.jsonl";
    failures_path = *options.out_dir / "failures.jsonl";
    manifest_path = *options.out_dir / "manifest.json";
    if (fs::exists(manifest_path) && Json::parse(read_file(manifest_path)) != manifest) {
      throw Error(ErrorCode::kInconsistentInputs,
                  manifest_path.string() + " belongs to another condition or model set; use a fresh output directory");
    }
    write_file_atomic(manifest_path, manifest.dump(2));
    if (fs::exists(cases_path)) {
      for (auto& c : load_cases(cases_path)) {
        auto id = c.problem_id;
        done.insert_or_assign(id, std::move(c));
      }
    }
  }

  SelfVerifyRun run;
  std::vector<const Problem*> todo;
  for (const auto& p : problems) {
    if (done.count(p.id)) {
      ++run.resumed;
    } else {
      todo.push_back(&p);
    }
  }

  std::mutex mu;
  parallel_for(todo.size(), options.workers, [&](std::size_t i) {
    const Problem& p = *todo[i];
    try {
      auto c = run_one(gateway, p, solver, verifier, judge, condition);
      std::lock_guard lock(mu);
      if (options.out_dir) append_line(cases_path, c.to_json().dump());
      done.insert_or_assign(p.id, std::move(c));
    } catch (const Error& e) {
      std::lock_guard lock(mu);
      run.failures.push_back({p.id, std::string(e.code_name()), e.what()});
    }
  });

  for (const auto& p : problems) {
    auto it = done.find(p.id);
    if (it != done.end()) run.cases.push_back(it->second);
  }
  std::sort(run.failures.begin(), run.failures.end(),
            [](const ProblemFailure& a, const ProblemFailure& b) { return a.problem_id < b.problem_id; });
  if (options.out_dir) {
    std::vector<Json> rows, fails;
    for (const auto& c : run.cases) rows.push_back(c.to_json());
    for (const auto& f : run.failures)
      fails.push_back({{"problem_id", f.problem_id}, {"code", f.code}, {"message", f.message}});
    write_jsonl(cases_path, rows);
    write_jsonl(failures_path, fails);
  }
  return run;
}

}  // namespace claimgate::selfverify
