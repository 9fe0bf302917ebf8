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

#include "src/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <csignal>
#include <map>
#include <mutex>
#include <thread>

#include "claimgate/common/error.hpp"
#include "claimgate/common/io.hpp"
#include "claimgate/common/parallel.hpp"
#include "claimgate/cli/cli.hpp"
#include "claimgate/eval/metrics.hpp"
#include "claimgate/eval/report.hpp"
#include "claimgate/graphgen/generator.hpp"
#include "claimgate/judge/rubric.hpp"
#include "claimgate/judge/stats.hpp"
#include "claimgate/llm/mock_provider.hpp"
#include "claimgate/review/server.hpp"
#include "claimgate/review/store.hpp"
#include "claimgate/selfverify/pipeline.hpp"
#include "claimgate/semantics/propositions.hpp"

namespace claimgate::cli {

namespace fs = std::filesystem;
using graphgen::Domain;

RunManifest::RunManifest(const fs::path& out_dir, const std::string& subcommand, Json config,
                         const std::vector<std::string>& argv)
    : path_(out_dir / "run_manifest.json") {
  fs::create_directories(out_dir);
  doc_ = {{"subcommand", subcommand},
          {"tool_version", version()},
          {"argv", argv},
          {"config", std::move(config)},
          {"started_at", utc_timestamp()},
          {"status", "running"},
          {"completed_units", Json::array()}};
  write();
}

void RunManifest::finish(const std::string& status, const std::vector<std::string>& completed_units) {
  doc_["status"] = status;
  doc_["completed_units"] = completed_units;
  doc_["finished_at"] = utc_timestamp();
  write();
}

void RunManifest::write() const { write_file_atomic(path_, doc_.dump(2)); }

std::unique_ptr<llm::Gateway> make_gateway(const Settings& s, const std::set<std::string>& providers,
                                           const llm::EnvLookup& env) {
  llm::GatewayOptions go;
  go.cache_dir = s.cache_dir;
  go.audit_log = s.out_dir / "audit.jsonl";
  go.max_inflight = s.max_inflight;
  auto gw = std::make_unique<llm::Gateway>(go);
  for (const auto& key : providers) {
    if (key == "mock") {
      if (!s.mock_script) throw Error(ErrorCode::kUsage, "provider mock needs --mock-script");
      Json script;
      try {
        script = Json::parse(read_file(*s.mock_script));
      } catch (const Json::exception& e) {
        throw Error(ErrorCode::kUsage, "mock script " + s.mock_script->string() + " is not valid JSON: " + e.what());
      }
      gw->register_provider(key, llm::MockProvider::from_json(script));
    } else {
      gw->register_provider(key, llm::make_builtin_provider(key, env));
    }
  }
  return gw;
}

std::string run_dir_name(const llm::ModelHandle& h) {
  std::string out = h.model + "@T" + eval::fixed(h.temperature, 2);
  for (auto& ch : out) {
    if (ch == '/' || ch == ':' || ch == '\\' || ch == ' ') ch = '_';
  }
  return out;
}

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::kUsage, message);
}

void require_model(const Settings& s) { require(!s.model.empty(), "--model is required"); }

void write_text(const fs::path& path, const std::string& text) { write_file_atomic(path, text); }

int finish_partial(RunManifest& manifest, const std::vector<std::string>& units, const fs::path& failures_path,
                   std::size_t failures, Io& io) {
  if (failures == 0) {
    manifest.finish("complete", units);
    return kExitOk;
  }
  manifest.finish("partial", units);
  io.err << "partial: " << failures << " unit(s) failed; see " << failures_path.string() << "\n";
  return kExitPartial;
}

}  // namespace

// ---------------------------------------------------------------- simulate

int cmd_simulate(const Settings& s, const SimulateArgs& a, Io& io) {
  semantics::EnumerationBounds b;
  b.atoms = a.atoms;
  b.max_pieces = a.pieces;
  b.max_constraints = a.constraints;
  if (a.claim_pool == "literals") {
    b.claim_pool = semantics::ClaimPool::kLiterals;
  } else if (a.claim_pool == "clauses") {
    b.claim_pool = semantics::ClaimPool::kLiteralsAndClauses;
  } else {
    throw Error(ErrorCode::kUsage, "--claim-pool must be literals or clauses");
  }
  std::optional<RunManifest> manifest;
  if (a.write_out) {
    manifest.emplace(s.out_dir, "simulate",
                     Json{{"atoms", a.atoms}, {"pieces", a.pieces}, {"constraints", a.constraints},
                          {"claim_pool", a.claim_pool}},
                     io.argv);
  }
  semantics::InstanceStream stream(b);
  auto report = semantics::check_propositions(stream);
  io.out << (a.json ? report.to_json().dump(2) + "\n" : report.to_text());
  if (manifest) {
    write_text(s.out_dir / "propositions.json", report.to_json().dump(2));
    manifest->finish(report.ok() ? "complete" : "violations", {});
  }
  return report.ok() ? kExitOk : kExitError;
}

// ---------------------------------------------------------------- generate

int cmd_generate(const Settings& s, const GenerateArgs& a, Io& io) {
  require_model(s);
  auto sources = graphgen::load_sources(a.sources);
  graphgen::PoolOptions po;
  po.out_dir = s.out_dir;
  po.per_source = a.per_source;
  po.generator = s.handle();
  po.workers = s.max_inflight;
  po.max_attempts = a.max_attempts;
  po.max_new_sources = a.max_new_sources;
  std::set<std::string> providers{po.generator.provider};
  if (!a.checker_model.empty()) {
    llm::ModelHandle checker = po.generator;
    checker.model = a.checker_model;
    if (!a.checker_provider.empty()) checker.provider = a.checker_provider;
    checker.temperature = 0.0;
    po.checker = checker;
    providers.insert(checker.provider);
  }
  Json config = {{"settings", s.to_json()},
                 {"sources", a.sources.string()},
                 {"sources_sha256", sha256_hex(read_file(a.sources))},
                 {"per_source", a.per_source},
                 {"generator", po.generator.to_json()},
                 {"checker", po.checker ? po.checker->to_json() : Json(nullptr)}};
  RunManifest manifest(s.out_dir, "generate", config, io.argv);
  auto gw = make_gateway(s, providers, io.env);
  auto report = graphgen::generate_pool(*gw, sources, po);
  auto candidates = graphgen::load_candidates(report.candidates_path);
  std::size_t gated = 0;
  std::vector<std::string> units;
  for (const auto& c : candidates) {
    gated += c.self_check.passed();
    units.push_back(c.id);
  }
  io.out << "sources: " << report.sources << " (skipped " << report.skipped << ", generated "
         << report.generated_sources << ")\n"
         << "candidates: " << candidates.size() << " total, " << report.new_candidates << " new, " << gated
         << " passed self-check\n"
         << "written: " << report.candidates_path.string() << "\n";
  return finish_partial(manifest, units, report.failures_path, report.failures.size(), io);
}

// ---------------------------------------------------------------- review

namespace {

review::StoreOptions store_options(const Settings& s, const ReviewArgs& a) {
  review::StoreOptions o;
  o.ledger = a.ledger ? *a.ledger : s.out_dir / "review" / "ledger.jsonl";
  o.snapshot = a.snapshot ? *a.snapshot : o.ledger.parent_path() / "snapshot.json";
  return o;
}

volatile std::sig_atomic_t g_stop_requested = 0;
extern "C" void request_stop(int) { g_stop_requested = 1; }

}  // namespace

int cmd_review_serve(const Settings& s, const ReviewArgs& a, Io& io) {
  review::ReviewStore store(store_options(s, a));
  if (a.requeue_rejected) io.out << "requeued " << store.requeue_rejected(a.annotator) << " candidate(s)\n";
  review::ServerOptions so;
  so.host = a.host;
  so.port = a.port;
  so.static_dir = a.static_dir;
  so.default_annotator = a.annotator;
  review::ReviewServer server(store, so);
  const int port = server.bind();
  io.out << "serving " << store.size() << " candidate(s) on http://" << a.host << ":" << port << "\n" << std::flush;

  g_stop_requested = 0;
  auto old_int = std::signal(SIGINT, request_stop);
  auto old_term = std::signal(SIGTERM, request_stop);
  std::atomic<bool> done{false};
  std::thread watcher([&] {
    while (!done) {
      if (g_stop_requested) {
        server.stop();
        return;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
  });
  server.listen();
  done = true;
  watcher.join();
  std::signal(SIGINT, old_int);
  std::signal(SIGTERM, old_term);
  store.write_snapshot();
  return kExitOk;
}

int cmd_review_enqueue(const Settings& s, const ReviewArgs& a, Io& io) {
  auto candidates = graphgen::load_candidates(a.candidates);
  std::size_t dropped = 0;
  if (a.skip_ungated) {
    dropped = static_cast<std::size_t>(std::erase_if(
        candidates, [](const graphgen::CandidateHardNegative& c) { return !c.self_check.passed(); }));
  }
  review::ReviewStore store(store_options(s, a));
  const auto added = store.enqueue(candidates);
  io.out << "enqueued " << added << " candidate(s)";
  if (added < candidates.size()) io.out << ", " << candidates.size() - added << " already present";
  if (dropped) io.out << ", " << dropped << " failed self-check and were skipped";
  io.out << "\n";
  return kExitOk;
}

int cmd_review_export(const Settings& s, const ReviewArgs& a, Io& io) {
  review::ReviewStore store(store_options(s, a));
  Domain domain;
  try {
    domain = graphgen::domain_from_string(a.domain);
  } catch (const Error& e) {
    throw Error(ErrorCode::kUsage, e.what());
  }
  fs::path path = a.export_path.empty() ? s.out_dir / (a.domain + "_adv_neg.jsonl") : a.export_path;
  const auto n = store.export_accepted(domain, path);
  io.out << "exported " << n << " accepted " << a.domain << " candidate(s) to " << path.string() << "\n";
  return kExitOk;
}

int cmd_review_stats(const Settings& s, const ReviewArgs& a, Io& io) {
  review::ReviewStore store(store_options(s, a));
  auto stats = store.stats();
  if (a.json) {
    io.out << stats.to_json().dump(2) << "\n";
    return kExitOk;
  }
  io.out << "| Domain | Generated | Pending | Accepted | Rejected (ambiguous) | Rejected (invalid) | Rate |\n"
         << "|---|---:|---:|---:|---:|---:|---:|\n";
  auto line = [&](const std::string& name, const review::DomainStats& d) {
    auto rate = d.acceptance_rate();
    io.out << "| " << name << " | " << d.generated << " | " << d.pending << " | " << d.accepted << " | "
           << d.rejected_ambiguous << " | " << d.rejected_invalid << " | "
           << (rate ? eval::fixed(*rate, 1) + "%" : std::string("-")) << " |\n";
  };
  for (const auto& [domain, d] : stats.domains) line(graphgen::to_string(domain), d);
  line("total", stats.total);
  return kExitOk;
}

// ---------------------------------------------------------------- evaluate

namespace {

std::vector<eval::PromptCondition> prompt_conditions(const std::vector<std::string>& raw) {
  std::vector<eval::PromptCondition> out;
  for (const auto& r : raw) {
    if (r == "all") {
      for (auto c : eval::kRocOrder)
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
      continue;
    }
    eval::PromptCondition c;
    try {
      c = eval::prompt_condition_from_string(r);
    } catch (const Error& e) {
      throw Error(ErrorCode::kUsage, e.what());
    }
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  if (out.empty()) out.push_back(eval::PromptCondition::kBaseline);
  return out;
}

std::vector<eval::GraphCondition> graph_conditions(const std::vector<std::string>& raw) {
  using G = eval::GraphCondition;
  std::vector<G> out;
  for (const auto& r : raw) {
    std::vector<G> add;
    if (r == "all") {
      add = {G::kNoGraph, G::kGraphO, G::kGraphOC, G::kGraphAll};
    } else {
      try {
        add = {eval::graph_condition_from_string(r)};
      } catch (const Error& e) {
        throw Error(ErrorCode::kUsage, e.what());
      }
    }
    for (auto g : add)
      if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  }
  if (out.empty()) out.push_back(G::kNoGraph);
  return out;
}

// Prompting conditions run without graphs; graph conditions use the
// baseline prompt.
std::vector<eval::EvalCondition> condition_matrix(const std::vector<eval::PromptCondition>& prompts,
                                                  const std::vector<eval::GraphCondition>& graphs) {
  const bool with_none = std::find(graphs.begin(), graphs.end(), eval::GraphCondition::kNoGraph) != graphs.end();
  const bool only_baseline = prompts.size() == 1 && prompts[0] == eval::PromptCondition::kBaseline;
  std::vector<eval::EvalCondition> out;
  if (with_none) {
    for (auto p : prompts) out.push_back({p, eval::GraphCondition::kNoGraph});
  } else if (!only_baseline) {
    throw Error(ErrorCode::kUsage, "graph conditions use the baseline prompt; add --graph-condition none to "
                                   "also run other prompting conditions");
  }
  for (auto g : graphs) {
    if (g != eval::GraphCondition::kNoGraph) out.push_back({eval::PromptCondition::kBaseline, g});
  }
  return out;
}

std::map<Domain, std::vector<eval::EvalOutcome>> by_domain(const std::vector<eval::EvalOutcome>& outcomes) {
  std::map<Domain, std::vector<eval::EvalOutcome>> out;
  for (const auto& o : outcomes) out[o.domain].push_back(o);
  return out;
}

}  // namespace

int cmd_evaluate(const Settings& s, const EvaluateArgs& a, Io& io) {
  require_model(s);
  auto dataset = eval::load_dataset(a.dataset);
  auto conditions = condition_matrix(prompt_conditions(a.conditions), graph_conditions(a.graph_conditions));
  std::vector<double> temps = a.temps.empty() ? std::vector<double>{s.temperature} : a.temps;
  const std::string label = a.label.empty() ? s.model : a.label;

  Json cond_json = Json::array();
  for (const auto& c : conditions) cond_json.push_back(c.label());
  Json config = {{"settings", s.to_json()},
                 {"dataset", a.dataset.string()},
                 {"dataset_hash", dataset.hash},
                 {"class_counts", dataset.counts_json()},
                 {"conditions", cond_json},
                 {"temperatures", temps},
                 {"retry_unparseable", a.retry_unparseable}};
  RunManifest manifest(s.out_dir, "evaluate", config, io.argv);
  auto gw = make_gateway(s, {s.provider}, io.env);

  std::vector<eval::MetricsRow> rows;
  Json roc_json = Json::array();
  std::string roc_md, roc_csv;
  Json failures = Json::array();
  std::vector<std::string> units;
  for (double t : temps) {
    llm::ModelHandle handle = s.handle();
    handle.temperature = t;
    std::map<eval::PromptCondition, std::vector<eval::EvalOutcome>> for_roc;
    for (const auto& c : conditions) {
      eval::RunOptions ro;
      ro.out_dir = s.out_dir / run_dir_name(handle) / c.label();
      ro.workers = s.max_inflight;
      ro.retry_unparseable = a.retry_unparseable;
      ro.max_new_records = a.max_new_records;
      auto run = eval::run_eval(*gw, dataset, handle, c, ro);
      const std::string unit = run_dir_name(handle) + "/" + c.label();
      for (const auto& f : run.failures) {
        failures.push_back({{"run", unit}, {"record_id", f.record_id}, {"code", f.code}, {"message", f.message}});
      }
      if (!run.partial()) units.push_back(unit);
      if (c.graph == eval::GraphCondition::kNoGraph) for_roc[c.prompt] = run.outcomes;

      std::string row_label = label;
      if (conditions.size() > 1) row_label += " " + c.label();
      if (temps.size() > 1) row_label += " T=" + eval::fixed(t, 1);
      std::vector<eval::MetricsRow> run_rows;
      for (const auto& [domain, outs] : by_domain(run.outcomes)) {
        try {
          run_rows.push_back({row_label, domain, eval::compute_metrics(outs)});
        } catch (const Error& e) {
          io.err << "warning: no metrics for " << unit << " " << graphgen::to_string(domain) << ": " << e.what()
                 << "\n";
        }
      }
      write_text(*ro.out_dir / "metrics.json", eval::render_json(run_rows).dump(2));
      rows.insert(rows.end(), run_rows.begin(), run_rows.end());
    }
    if (for_roc.size() >= 2) {
      const std::string roc_label = temps.size() > 1 ? label + " T=" + eval::fixed(t, 1) : label;
      try {
        auto points = eval::compute_roc(for_roc);
        Json pts = Json::array();
        for (const auto& p : points) pts.push_back(p.to_json());
        roc_json.push_back({{"model", roc_label}, {"points", pts}});
        roc_md += eval::render_roc_markdown(roc_label, points);
        roc_csv += eval::render_roc_csv(roc_label, points);
      } catch (const Error& e) {
        io.err << "warning: no ROC for " << roc_label << ": " << e.what() << "\n";
      }
    }
  }

  write_text(s.out_dir / "metrics.json", eval::render_json(rows).dump(2));
  const auto table = rows.empty() ? std::string() : eval::render_markdown(rows);
  write_text(s.out_dir / "table.md", table);
  write_text(s.out_dir / "table.csv", rows.empty() ? std::string() : eval::render_csv(rows));
  io.out << table;
  if (!roc_json.empty()) {
    write_text(s.out_dir / "roc.json", roc_json.dump(2));
    write_text(s.out_dir / "roc.md", roc_md);
    write_text(s.out_dir / "roc.csv", roc_csv);
    io.out << "\n" << roc_md;
  }
  const fs::path failures_path = s.out_dir / "failures.json";
  write_text(failures_path, failures.dump(2));
  return finish_partial(manifest, units, failures_path, failures.size(), io);
}

// ---------------------------------------------------------------- judge

int cmd_judge(const Settings& s, const JudgeArgs& a, Io& io) {
  require_model(s);
  auto outcomes = eval::load_outcomes(a.outcomes);
  auto dataset = eval::load_dataset(a.dataset);
  const auto handle = s.handle();
  Json config = {{"settings", s.to_json()},
                 {"outcomes", a.outcomes.string()},
                 {"outcomes_sha256", sha256_hex(read_file(a.outcomes))},
                 {"dataset_hash", dataset.hash},
                 {"judge", handle.to_json()},
                 {"negatives_only", !a.all_classes}};
  RunManifest manifest(s.out_dir, "judge", config, io.argv);
  auto gw = make_gateway(s, {handle.provider}, io.env);
  judge::JudgeOptions jo;
  jo.out_dir = s.out_dir;
  jo.workers = s.max_inflight;
  jo.negatives_only = !a.all_classes;
  auto report = judge::judge_outcomes(*gw, outcomes, dataset, handle, jo);

  std::vector<std::string> units;
  for (const auto& sc : report.scores) units.push_back(sc.record_id);
  std::vector<judge::TraceScore> grouped;
  for (const auto& sc : report.scores) {
    if (sc.claim_class == eval::ClaimClass::kStandardNeg || sc.claim_class == eval::ClaimClass::kAdvNeg) {
      grouped.push_back(sc);
    }
  }
  if (!grouped.empty()) {
    auto table = judge::group_scores(std::span<const judge::TraceScore>(grouped));
    const std::string label = a.label.empty() ? "traces" : a.label;
    auto md = judge::render_score_table({{label, table}});
    write_text(s.out_dir / "score_table.md", md);
    write_text(s.out_dir / "score_table.json", table.to_json().dump(2));
    io.out << md;
  }
  io.out << "scored " << report.scores.size() << " trace(s), " << report.resumed << " resumed\n";
  return finish_partial(manifest, units, s.out_dir / "failures.jsonl", report.failures.size(), io);
}

// ---------------------------------------------------------------- selfverify

int cmd_selfverify(const Settings& s, const SelfVerifyArgs& a, Io& io) {
  require_model(s);
  require(!a.judge_model.empty(), "--judge-model is required");
  auto problems = selfverify::load_problems(a.problems);
  std::vector<eval::PromptCondition> conditions;
  for (const auto& c : a.conditions.empty() ? std::vector<std::string>{"baseline"} : a.conditions) {
    if (c == "all") {
      conditions = {eval::PromptCondition::kBaseline, eval::PromptCondition::kCwa, eval::PromptCondition::kOwa};
      break;
    }
    eval::PromptCondition pc;
    try {
      pc = eval::prompt_condition_from_string(c);
    } catch (const Error& e) {
      throw Error(ErrorCode::kUsage, e.what());
    }
    selfverify::require_self_verify_condition(pc);
    if (std::find(conditions.begin(), conditions.end(), pc) == conditions.end()) conditions.push_back(pc);
  }
  const auto solver = s.handle();
  llm::ModelHandle verifier = solver;
  if (!a.verifier_model.empty()) verifier.model = a.verifier_model;
  llm::ModelHandle judge_handle{a.judge_provider.empty() ? s.provider : a.judge_provider, a.judge_model,
                                a.judge_temp, s.max_tokens, false};
  const std::string name = a.dataset_name.empty() ? a.problems.stem().string() : a.dataset_name;

  Json cond_json = Json::array();
  for (auto c : conditions) cond_json.push_back(eval::to_string(c));
  Json config = {{"settings", s.to_json()},
                 {"problems", a.problems.string()},
                 {"problems_sha256", sha256_hex(read_file(a.problems))},
                 {"solver", solver.to_json()},
                 {"verifier", verifier.to_json()},
                 {"judge", judge_handle.to_json()},
                 {"conditions", cond_json}};
  RunManifest manifest(s.out_dir, "selfverify", config, io.argv);
  auto gw = make_gateway(s, {solver.provider, judge_handle.provider}, io.env);

  std::vector<selfverify::ReportRow> rows;
  Json failures = Json::array();
  std::vector<std::string> units;
  for (auto c : conditions) {
    selfverify::SelfVerifyOptions so;
    so.out_dir = s.out_dir / eval::to_string(c);
    so.workers = s.max_inflight;
    so.allow_same_judge = a.allow_same_judge;
    auto run = selfverify::run_self_verify(*gw, problems, solver, verifier, judge_handle, c, so);
    for (const auto& f : run.failures) {
      failures.push_back(
          {{"condition", eval::to_string(c)}, {"problem_id", f.problem_id}, {"code", f.code}, {"message", f.message}});
    }
    if (!run.partial()) units.push_back(eval::to_string(c));
    if (!run.cases.empty()) rows.push_back({name, selfverify::compute_self_verify_metrics(run.cases, eval::to_string(c))});
  }
  Json out = Json::array();
  for (const auto& r : rows) out.push_back({{"dataset", r.dataset}, {"report", r.report.to_json()}});
  write_text(s.out_dir / "selfverify.json", out.dump(2));
  const auto md = selfverify::render_self_verify_markdown(rows);
  write_text(s.out_dir / "selfverify.md", md);
  write_text(s.out_dir / "selfverify.csv", selfverify::render_self_verify_csv(rows));
  io.out << md;
  const fs::path failures_path = s.out_dir / "failures.json";
  write_text(failures_path, failures.dump(2));
  return finish_partial(manifest, units, failures_path, failures.size(), io);
}

// ---------------------------------------------------------------- ablate

int cmd_ablate(const Settings& s, const AblateArgs& a, Io& io) {
  require_model(s);
  graphgen::RephraseStyle style;
  try {
    style = graphgen::rephrase_style_from_string(a.style);
  } catch (const Error& e) {
    throw Error(ErrorCode::kUsage, e.what());
  }
  require(a.per_domain > 0, "--per-domain must be positive");
  auto dataset = eval::load_dataset(a.dataset);
  // Surface-form rephrases standard negatives; cross-model rephrases the
  // generated adversarial negatives with a different model.
  const auto source_class =
      style == graphgen::RephraseStyle::kSurfaceForm ? eval::ClaimClass::kStandardNeg : eval::ClaimClass::kAdvNeg;
  std::vector<eval::DatasetRecord> subset;
  std::map<Domain, std::size_t> taken;
  for (const auto& r : dataset.records) {
    if (r.claim_class != source_class || taken[r.domain] >= a.per_domain) continue;
    ++taken[r.domain];
    subset.push_back(r);
  }
  if (subset.empty()) {
    throw Error(ErrorCode::kEmptyInput, std::string("dataset has no ") + eval::to_string(source_class) + " records");
  }

  const auto rephraser = s.handle();
  std::optional<llm::ModelHandle> evaluator;
  if (!a.eval_model.empty()) {
    evaluator = llm::ModelHandle{a.eval_provider.empty() ? s.provider : a.eval_provider, a.eval_model, a.eval_temp,
                                 s.max_tokens, false};
  }
  Json config = {{"settings", s.to_json()},
                 {"dataset", a.dataset.string()},
                 {"dataset_hash", dataset.hash},
                 {"style", a.style},
                 {"per_domain", a.per_domain},
                 {"rephraser", rephraser.to_json()},
                 {"evaluator", evaluator ? evaluator->to_json() : Json(nullptr)}};
  RunManifest manifest(s.out_dir, "ablate", config, io.argv);
  std::set<std::string> providers{rephraser.provider};
  if (evaluator) providers.insert(evaluator->provider);
  auto gw = make_gateway(s, providers, io.env);

  const fs::path pairs_path = s.out_dir / "pairs.jsonl";
  std::map<std::string, std::string> done;
  if (fs::exists(pairs_path)) {
    for (const auto& j : read_jsonl(pairs_path)) done[j.at("id").get<std::string>()] = j.at("rephrased").get<std::string>();
  }
  std::vector<const eval::DatasetRecord*> todo;
  for (const auto& r : subset)
    if (!done.count(r.id)) todo.push_back(&r);
  std::mutex mu;
  Json failures = Json::array();
  parallel_for(todo.size(), s.max_inflight, [&](std::size_t i) {
    const auto& r = *todo[i];
    try {
      auto out = graphgen::rephrase_negative(*gw, r.claim, style, rephraser);
      std::lock_guard lock(mu);
      append_line(pairs_path, Json{{"id", r.id}, {"original", r.claim}, {"rephrased", out.rephrased}}.dump());
      done[r.id] = out.rephrased;
    } catch (const Error& e) {
      std::lock_guard lock(mu);
      failures.push_back({{"record_id", r.id}, {"code", std::string(e.code_name())}, {"message", e.what()}});
    }
  });

  std::vector<eval::DatasetRecord> original, rephrased;
  std::vector<Json> pairs;
  std::vector<std::string> units;
  for (const auto& r : subset) {
    auto it = done.find(r.id);
    if (it == done.end()) continue;
    original.push_back(r);
    auto copy = r;
    copy.id = r.id + "-rephrased";
    copy.claim = it->second;
    copy.claim_class = eval::ClaimClass::kRephrasedNeg;
    copy.gold = eval::Label::kInfeasible;
    rephrased.push_back(std::move(copy));
    pairs.push_back({{"id", r.id}, {"original", r.claim}, {"rephrased", it->second}});
    units.push_back(r.id);
  }
  write_jsonl(pairs_path, pairs);
  eval::write_dataset(s.out_dir / "original.jsonl", original);
  eval::write_dataset(s.out_dir / "rephrased.jsonl", rephrased);
  io.out << "rephrased " << rephrased.size() << " of " << subset.size() << " " << eval::to_string(source_class)
         << " claim(s)\n";

  if (evaluator && !original.empty()) {
    std::map<Domain, std::pair<eval::ClassTally, eval::ClassTally>> acc;
    for (const char* which : {"original", "rephrased"}) {
      auto ds = eval::load_dataset(s.out_dir / (std::string(which) + ".jsonl"));
      eval::RunOptions ro;
      ro.out_dir = s.out_dir / "eval" / which;
      ro.workers = s.max_inflight;
      auto run = eval::run_eval(*gw, ds, *evaluator, {}, ro);
      for (const auto& f : run.failures) {
        failures.push_back({{"run", which}, {"record_id", f.record_id}, {"code", f.code}, {"message", f.message}});
      }
      for (const auto& o : run.outcomes) {
        auto& t = std::string(which) == "original" ? acc[o.domain].first : acc[o.domain].second;
        ++t.total;
        t.correct += o.correct();
        t.unparseable += o.verdict == eval::Verdict::kUnparseable;
      }
    }
    std::string md = "| Domain | n | Original (%) | Rephrased (%) |\n|---|---:|---:|---:|\n";
    for (const auto& [domain, pr] : acc) {
      md += "| " + std::string(graphgen::to_string(domain)) + " | " + std::to_string(pr.first.total) + " | " +
            eval::fixed(pr.first.accuracy_pct(), 1) + " | " + eval::fixed(pr.second.accuracy_pct(), 1) + " |\n";
    }
    write_text(s.out_dir / "ablation.md", md);
    io.out << md;
  }
  const fs::path failures_path = s.out_dir / "failures.json";
  write_text(failures_path, failures.dump(2));
  return finish_partial(manifest, units, failures_path, failures.size(), io);
}

// ---------------------------------------------------------------- report

namespace {

Json read_json(const fs::path& p) {
  try {
    return Json::parse(read_file(p));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kSchemaViolation, p.string() + ": " + e.what());
  }
}

}  // namespace

int cmd_report(const ReportArgs& a, Io& io) {
  require(a.format == "md" || a.format == "csv" || a.format == "json", "--format must be md, csv or json");
  require(a.metrics || a.roc || a.scores || a.selfverify,
          "report needs at least one of --metrics, --roc, --scores, --selfverify");
  std::vector<std::string> parts;
  if (a.metrics) {
    auto rows = eval::parse_metrics_rows(read_json(*a.metrics));
    if (a.format == "json") {
      parts.push_back(eval::render_json(rows).dump(2) + "\n");
    } else {
      parts.push_back(a.format == "csv" ? eval::render_csv(rows) : eval::render_markdown(rows));
    }
  }
  if (a.roc) {
    Json doc = read_json(*a.roc);
    if (!doc.is_array()) throw Error(ErrorCode::kSchemaViolation, "roc file must hold an array");
    std::string text;
    for (const auto& entry : doc) {
      std::vector<eval::RocPoint> points;
      for (const auto& p : entry.at("points")) points.push_back(eval::RocPoint::from_json(p));
      const auto model = entry.at("model").get<std::string>();
      text += a.format == "csv" ? eval::render_roc_csv(model, points) : eval::render_roc_markdown(model, points);
    }
    parts.push_back(a.format == "json" ? doc.dump(2) + "\n" : text);
  }
  if (a.scores) {
    auto scores = judge::load_scores(*a.scores);
    std::erase_if(scores, [](const judge::TraceScore& t) {
      return t.claim_class != eval::ClaimClass::kStandardNeg && t.claim_class != eval::ClaimClass::kAdvNeg;
    });
    auto table = judge::group_scores(std::span<const judge::TraceScore>(scores));
    parts.push_back(a.format == "json" ? table.to_json().dump(2) + "\n"
                                       : judge::render_score_table({{a.label, table}}));
  }
  if (a.selfverify) {
    Json doc = read_json(*a.selfverify);
    std::vector<selfverify::ReportRow> rows;
    try {
      for (const auto& entry : doc) {
        const auto& r = entry.at("report");
        rows.push_back({entry.at("dataset").get<std::string>(),
                        selfverify::compute_self_verify_metrics(selfverify::LabelCounts::from_json(r.at("counts")),
                                                                r.value("condition", ""))});
      }
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::kSchemaViolation, a.selfverify->string() + ": " + e.what());
    }
    if (a.format == "json") {
      Json out = Json::array();
      for (const auto& r : rows) out.push_back({{"dataset", r.dataset}, {"report", r.report.to_json()}});
      parts.push_back(out.dump(2) + "\n");
    } else {
      parts.push_back(a.format == "csv" ? selfverify::render_self_verify_csv(rows)
                                        : selfverify::render_self_verify_markdown(rows));
    }
  }
  std::string text;
  for (std::size_t i = 0; i < parts.size(); ++i) text += (i ? "\n" : "") + parts[i];
  if (a.out) {
    write_text(*a.out, text);
  } else {
    io.out << text;
  }
  return kExitOk;
}

}  // namespace claimgate::cli
