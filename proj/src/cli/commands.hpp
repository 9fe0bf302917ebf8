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

#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "claimgate/cli/settings.hpp"
#include "claimgate/llm/gateway.hpp"

namespace claimgate::cli {

struct Io {
  std::ostream& out;
  std::ostream& err;
  const llm::EnvLookup& env;
  std::vector<std::string> argv;
};

// run_manifest.json in the output directory. Written before any provider
// is contacted and rewritten with the completed units at the end.
class RunManifest {
 public:
  RunManifest(const std::filesystem::path& out_dir, const std::string& subcommand, Json config,
              const std::vector<std::string>& argv);
  void finish(const std::string& status, const std::vector<std::string>& completed_units);
  const std::filesystem::path& path() const { return path_; }

 private:
  void write() const;
  std::filesystem::path path_;
  Json doc_;
};

// Gateway with every provider key in `providers` registered. "mock" needs a
// mock script. Errors: usage when the mock script is missing.
std::unique_ptr<llm::Gateway> make_gateway(const Settings& settings, const std::set<std::string>& providers,
                                           const llm::EnvLookup& env);

// Directory-safe rendering of a model handle and temperature.
std::string run_dir_name(const llm::ModelHandle& handle);

struct SimulateArgs {
  std::size_t atoms = 4, pieces = 4, constraints = 3;
  std::string claim_pool = "literals";
  bool json = false;
  bool write_out = false;
};
int cmd_simulate(const Settings& s, const SimulateArgs& a, Io& io);

struct GenerateArgs {
  std::filesystem::path sources;
  std::size_t per_source = 1;
  int max_attempts = 3;
  std::optional<std::size_t> max_new_sources;
  std::string checker_provider, checker_model;
};
int cmd_generate(const Settings& s, const GenerateArgs& a, Io& io);

struct ReviewArgs {
  std::optional<std::filesystem::path> ledger, snapshot;
  // serve
  std::string host = "127.0.0.1";
  int port = 8080;
  std::optional<std::filesystem::path> static_dir;
  bool requeue_rejected = false;
  std::string annotator = "annotator";
  // enqueue
  std::filesystem::path candidates;
  bool skip_ungated = false;
  // export
  std::string domain;
  std::filesystem::path export_path;
  // stats
  bool json = false;
};
int cmd_review_serve(const Settings& s, const ReviewArgs& a, Io& io);
int cmd_review_enqueue(const Settings& s, const ReviewArgs& a, Io& io);
int cmd_review_export(const Settings& s, const ReviewArgs& a, Io& io);
int cmd_review_stats(const Settings& s, const ReviewArgs& a, Io& io);

struct EvaluateArgs {
  std::filesystem::path dataset;
  std::vector<std::string> conditions;
  std::vector<std::string> graph_conditions;
  std::vector<double> temps;
  bool retry_unparseable = false;
  std::optional<std::size_t> max_new_records;
  std::string label;
};
int cmd_evaluate(const Settings& s, const EvaluateArgs& a, Io& io);

struct JudgeArgs {
  std::filesystem::path outcomes, dataset;
  bool all_classes = false;
  std::string label;
};
int cmd_judge(const Settings& s, const JudgeArgs& a, Io& io);

struct SelfVerifyArgs {
  std::filesystem::path problems;
  std::vector<std::string> conditions;
  std::string judge_provider, judge_model, verifier_model;
  double judge_temp = 0.0;
  bool allow_same_judge = false;
  std::string dataset_name;
};
int cmd_selfverify(const Settings& s, const SelfVerifyArgs& a, Io& io);

struct AblateArgs {
  std::filesystem::path dataset;
  std::string style = "surface-form";
  std::size_t per_domain = 50;
  std::string eval_provider, eval_model;
  double eval_temp = 0.0;
};
int cmd_ablate(const Settings& s, const AblateArgs& a, Io& io);

struct ReportArgs {
  std::optional<std::filesystem::path> metrics, roc, scores, selfverify;
  std::string format = "md";
  std::string label = "model";
  std::optional<std::filesystem::path> out;
};
int cmd_report(const ReportArgs& a, Io& io);

}  // namespace claimgate::cli
