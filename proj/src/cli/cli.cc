// Copyright 2026 The PRIDE Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <ostream>

#include "CLI11.hpp"
#include "pride/cli.h"

namespace pride::cli {

namespace {

// Environment override: PRIDE_ plus the flag name uppercased, '-' as '_'.
std::string env_name(std::string flag) {
  for (char& c : flag) c = c == '-' ? '_' : static_cast<char>(std::toupper(c));
  return "PRIDE_" + flag;
}

CLI::Option* add_path(CLI::App* app, const std::string& flag, std::string& target,
                      const std::string& help, bool required = true) {
  auto* opt = app->add_option("--" + flag, target, help)->envname(env_name(flag));
  if (required) opt->required();
  return opt;
}

void add_out_dir(CLI::App* app, RunConfig& config) {
  add_path(app, "out-dir", config.out_dir, "Directory for output files", false)
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  std::string tau_rule = "max";
  std::string aggregate_mode = "weighted";

  CLI::App app{"Paraphrase-robustness evaluation: PRIDE scoring, trajectory failure "
               "classification, and benchmark reports."};
  app.name(args.empty() ? "pride" : args.front());
  app.set_config("--config", "", "TOML/INI file with option values; flags override it");
  app.require_subcommand(1);

  auto* score = app.add_subcommand("score", "Keyword, structural and paraphrase distance per pair");
  add_path(score, "manifest", config.manifest, "Benchmark manifest (JSON lines)");
  add_path(score, "parses", config.parses, "CoNLL-U parses of every manifest sentence");
  add_path(score, "embeddings", config.embeddings, "Content-word embeddings (JSON lines)");
  score->add_option("--alpha", config.alpha, "Keyword weight in the paraphrase distance")
      ->envname(env_name("alpha"))
      ->capture_default_str();
  add_out_dir(score, config);

  auto* classify = app.add_subcommand("classify", "Near-GT / Far-GT failure classification");
  add_path(classify, "episodes", config.episodes, "Episode file (JSON lines)");
  classify->add_option("--k", config.k, "Resampled trajectory length")
      ->envname(env_name("k"))
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}))
      ->capture_default_str();
  classify->add_option("--tau-rule", tau_rule, "Threshold over success distances")
      ->envname(env_name("tau-rule"))
      ->check(CLI::IsMember({"max", "p99", "p95", "p90"}))
      ->capture_default_str();
  add_out_dir(classify, config);

  auto* report = app.add_subcommand("report", "Cell grids, overestimation, alpha sweep, Pearson");
  add_path(report, "pair-distances", config.pair_distances, "Output of `score`");
  add_path(report, "episodes", config.episodes, "Episode file (JSON lines)");
  add_path(report, "manifest", config.manifest, "Benchmark manifest (JSON lines)");
  report->add_option("--aggregate-mode", aggregate_mode, "PRIDE aggregation")
      ->envname(env_name("aggregate-mode"))
      ->check(CLI::IsMember({"raw", "weighted"}))
      ->capture_default_str();
  report->add_option("--sweep", config.sweep, "Alpha grid start:end:step (empty to skip)")
      ->envname(env_name("sweep"))
      ->capture_default_str();
  add_out_dir(report, config);

  auto* validate = app.add_subcommand("validate", "Dataset statistics and consistency flags");
  add_path(validate, "manifest", config.manifest, "Benchmark manifest (JSON lines)");

  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  config.tau_rule = *parse_tau_rule(tau_rule);
  config.aggregate_mode = *parse_aggregate_mode(aggregate_mode);

  if (score->parsed()) return cmd_score(config, out, err);
  if (classify->parsed()) return cmd_classify(config, out, err);
  if (report->parsed()) return cmd_report(config, out, err);
  return cmd_validate(config, out, err);
}

}  // namespace pride::cli
