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

#include "claimgate/cli/cli.hpp"

#include <CLI11.hpp>

#include "claimgate/common/error.hpp"
#include "src/cli/commands.hpp"

namespace claimgate::cli {

const char* version() { return "0.1.0"; }

namespace {

// Shared flags, bound to every leaf subcommand. Presence is read back from
// the option counts so unset flags fall through to env and config.
struct CommonFlags {
  std::string provider, model, cache_dir, out_dir, mock_script, config;
  double temp = 0;
  int max_tokens = 0;
  bool thinking = false;
  std::size_t max_inflight = 0;
  std::vector<CLI::Option*> opts;

  void attach(CLI::App* app) {
    opts.push_back(app->add_option("--provider", provider, "openai, gemini, anthropic, local or mock"));
    opts.push_back(app->add_option("--model", model, "Model identifier"));
    opts.push_back(app->add_option("--temp", temp, "Sampling temperature"));
    opts.push_back(app->add_option("--max-tokens", max_tokens, "Output token limit"));
    opts.push_back(app->add_flag("--thinking", thinking, "Enable extended reasoning"));
    opts.push_back(app->add_option("--cache-dir", cache_dir, "Response cache directory"));
    opts.push_back(app->add_option("--out-dir", out_dir, "Output directory"));
    opts.push_back(app->add_option("--max-inflight", max_inflight, "Concurrent requests"));
    opts.push_back(app->add_option("--mock-script", mock_script, "Scripted responses for --provider mock"));
    opts.push_back(app->add_option("--config", config, "JSON config file"));
  }

  SettingFlags flags() const {
    SettingFlags f;
    for (const auto* o : opts) {
      if (!o->count()) continue;
      const auto& n = o->get_name();
      if (n == "--provider") f.provider = provider;
      else if (n == "--model") f.model = model;
      else if (n == "--temp") f.temperature = temp;
      else if (n == "--max-tokens") f.max_tokens = max_tokens;
      else if (n == "--thinking") f.thinking = thinking;
      else if (n == "--cache-dir") f.cache_dir = cache_dir;
      else if (n == "--out-dir") f.out_dir = out_dir;
      else if (n == "--max-inflight") f.max_inflight = max_inflight;
      else if (n == "--mock-script") f.mock_script = mock_script;
      else if (n == "--config") f.config = config;
    }
    return f;
  }
};

template <typename T>
void set_if(CLI::Option* o, std::optional<T>& dst, const T& value) {
  if (o->count()) dst = value;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const llm::EnvLookup& env) {
  CLI::App app{"Feasibility-claim evaluation toolkit", "claimgate"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);
  CommonFlags common;

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Check the closed-world propositions over bounded instances");
  simulate->add_option("--atoms", sim.atoms, "Atom count")->check(CLI::Range(1, 16));
  simulate->add_option("--pieces", sim.pieces, "Maximum evidence pieces");
  simulate->add_option("--constraints", sim.constraints, "Maximum constraints");
  simulate->add_option("--claim-pool", sim.claim_pool, "literals or clauses");
  simulate->add_flag("--json", sim.json, "Print the report as JSON");
  simulate->add_flag("--write", sim.write_out, "Also write propositions.json and a run manifest to --out-dir");
  common.attach(simulate);

  GenerateArgs gen;
  std::size_t max_new_sources = 0;
  auto* generate = app.add_subcommand("generate", "Generate hard-negative candidates from source records");
  generate->add_option("--sources", gen.sources, "Source records (JSONL)")->required();
  generate->add_option("--per-source", gen.per_source, "Candidates per source");
  generate->add_option("--max-attempts", gen.max_attempts, "Attempts per candidate");
  auto* gen_max_new = generate->add_option("--max-new-sources", max_new_sources, "Stop after this many sources");
  generate->add_option("--checker-provider", gen.checker_provider, "Self-check provider");
  generate->add_option("--checker-model", gen.checker_model, "Self-check model (defaults to the generator)");
  common.attach(generate);

  ReviewArgs rev;
  std::string ledger, snapshot, static_dir;
  auto* review = app.add_subcommand("review", "Human review of generated candidates");
  review->require_subcommand(1);
  auto review_store = [&](CLI::App* sub) {
    auto* l = sub->add_option("--ledger", ledger, "Review ledger (default <out-dir>/review/ledger.jsonl)");
    auto* s = sub->add_option("--snapshot", snapshot, "Snapshot file (default next to the ledger)");
    common.attach(sub);
    return std::pair{l, s};
  };
  auto* serve = review->add_subcommand("serve", "Serve the review API");
  serve->add_option("--host", rev.host, "Bind address");
  serve->add_option("--port", rev.port, "Port (0 picks a free one)");
  auto* static_opt = serve->add_option("--static", static_dir, "Directory of UI assets served at /");
  serve->add_flag("--requeue-rejected", rev.requeue_rejected, "Move ambiguous rejections back to pending");
  serve->add_option("--annotator", rev.annotator, "Default annotator name");
  auto serve_store = review_store(serve);
  auto* enqueue = review->add_subcommand("enqueue", "Add candidates to the review queue");
  enqueue->add_option("--candidates", rev.candidates, "candidates.jsonl from generate")->required();
  enqueue->add_flag("--skip-ungated", rev.skip_ungated, "Drop candidates that failed self-check");
  auto enqueue_store = review_store(enqueue);
  auto* exp = review->add_subcommand("export", "Export accepted candidates as dataset records");
  exp->add_option("--domain", rev.domain, "nli4ct, scitab or sciver")->required();
  exp->add_option("--out", rev.export_path, "Output JSONL (default <out-dir>/<domain>_adv_neg.jsonl)");
  auto export_store = review_store(exp);
  auto* stats = review->add_subcommand("stats", "Acceptance statistics per domain");
  stats->add_flag("--json", rev.json, "Print JSON");
  auto stats_store = review_store(stats);

  EvaluateArgs ev;
  std::size_t max_new_records = 0;
  auto* evaluate = app.add_subcommand("evaluate", "Run a model over a dataset");
  evaluate->add_option("--dataset", ev.dataset, "Dataset (JSONL)")->required();
  evaluate->add_option("--condition", ev.conditions, "baseline, owa, cwa, dcp-owa, dcp-cwa or all")->delimiter(',');
  evaluate->add_option("--graph-condition", ev.graph_conditions, "none, graph-o, graph-oc, graph-all or all")
      ->delimiter(',');
  evaluate->add_option("--temps", ev.temps, "Temperatures to sweep")->delimiter(',');
  evaluate->add_flag("--retry-unparseable", ev.retry_unparseable, "Retry once when no verdict is found");
  auto* ev_max_new = evaluate->add_option("--max-new-records", max_new_records, "Stop after this many queries per run");
  evaluate->add_option("--label", ev.label, "Row label in the tables (default: model)");
  common.attach(evaluate);

  JudgeArgs jd;
  auto* judge = app.add_subcommand("judge", "Score reasoning traces with the rubric");
  judge->add_option("--outcomes", jd.outcomes, "outcomes.jsonl from evaluate")->required();
  judge->add_option("--dataset", jd.dataset, "Dataset the outcomes came from")->required();
  judge->add_flag("--all-classes", jd.all_classes, "Also score positives");
  judge->add_option("--label", jd.label, "Row label");
  common.attach(judge);

  SelfVerifyArgs sv;
  auto* selfverify = app.add_subcommand("selfverify", "Solve, verify and judge math problems");
  selfverify->add_option("--problems", sv.problems, "Problems (JSONL)")->required();
  selfverify->add_option("--condition", sv.conditions, "baseline, owa, cwa or all")->delimiter(',');
  selfverify->add_option("--judge-provider", sv.judge_provider, "Judge provider");
  selfverify->add_option("--judge-model", sv.judge_model, "Judge model")->required();
  selfverify->add_option("--judge-temp", sv.judge_temp, "Judge temperature");
  selfverify->add_option("--verifier-model", sv.verifier_model, "Verifier model (defaults to the solver)");
  selfverify->add_flag("--allow-same-judge", sv.allow_same_judge, "Permit the judge to equal the solver");
  selfverify->add_option("--dataset-name", sv.dataset_name, "Name in the report (default: file stem)");
  common.attach(selfverify);

  AblateArgs ab;
  auto* ablate = app.add_subcommand("ablate", "Rephrase negatives and compare accuracy");
  ablate->add_option("--dataset", ab.dataset, "Dataset (JSONL)")->required();
  ablate->add_option("--style", ab.style, "surface-form or cross-model");
  ablate->add_option("--per-domain", ab.per_domain, "Records per domain");
  ablate->add_option("--eval-provider", ab.eval_provider, "Evaluator provider");
  ablate->add_option("--eval-model", ab.eval_model, "Evaluate both sets with this model");
  ablate->add_option("--eval-temp", ab.eval_temp, "Evaluator temperature");
  common.attach(ablate);

  ReportArgs rp;
  std::string metrics_path, roc_path, scores_path, sv_path, report_out;
  auto* report = app.add_subcommand("report", "Render tables from saved results");
  auto* rp_metrics = report->add_option("--metrics", metrics_path, "metrics.json");
  auto* rp_roc = report->add_option("--roc", roc_path, "roc.json");
  auto* rp_scores = report->add_option("--scores", scores_path, "scores.jsonl");
  auto* rp_sv = report->add_option("--selfverify", sv_path, "selfverify.json");
  report->add_option("--format", rp.format, "md, csv or json");
  report->add_option("--label", rp.label, "Row label for score tables");
  auto* rp_out = report->add_option("--out", report_out, "Write to a file instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Io io{out, err, env, args};
  try {
    if (*report) {
      set_if(rp_metrics, rp.metrics, std::filesystem::path(metrics_path));
      set_if(rp_roc, rp.roc, std::filesystem::path(roc_path));
      set_if(rp_scores, rp.scores, std::filesystem::path(scores_path));
      set_if(rp_sv, rp.selfverify, std::filesystem::path(sv_path));
      set_if(rp_out, rp.out, std::filesystem::path(report_out));
      return cmd_report(rp, io);
    }
    const Settings settings = resolve_settings(common.flags(), env);
    if (*simulate) return cmd_simulate(settings, sim, io);
    if (*generate) {
      set_if(gen_max_new, gen.max_new_sources, max_new_sources);
      return cmd_generate(settings, gen, io);
    }
    if (*review) {
      for (auto [l, s] : {serve_store, enqueue_store, export_store, stats_store}) {
        set_if(l, rev.ledger, std::filesystem::path(ledger));
        set_if(s, rev.snapshot, std::filesystem::path(snapshot));
      }
      set_if(static_opt, rev.static_dir, std::filesystem::path(static_dir));
      if (*serve) return cmd_review_serve(settings, rev, io);
      if (*enqueue) return cmd_review_enqueue(settings, rev, io);
      if (*exp) return cmd_review_export(settings, rev, io);
      return cmd_review_stats(settings, rev, io);
    }
    if (*evaluate) {
      set_if(ev_max_new, ev.max_new_records, max_new_records);
      return cmd_evaluate(settings, ev, io);
    }
    if (*judge) return cmd_judge(settings, jd, io);
    if (*selfverify) return cmd_selfverify(settings, sv, io);
    if (*ablate) return cmd_ablate(settings, ab, io);
  } catch (const Error& e) {
    err << "error [" << e.code_name() << "]: " << e.what() << "\n";
    return e.code() == ErrorCode::kUsage || e.code() == ErrorCode::kBoundsExceeded ? kExitUsage : kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace claimgate::cli
