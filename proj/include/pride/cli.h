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

// Batch command-line front end: score, classify, report, validate.

#ifndef PRIDE_CLI_H_
#define PRIDE_CLI_H_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "pride/pride_metric.h"
#include "pride/trajectory.h"

namespace pride::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitInput = 2,
  kExitFindings = 3,
};

struct RunConfig {
  double alpha = kDefaultAlpha;
  std::size_t k = kDefaultResampleSize;
  TauRule tau_rule = TauRule::kMax;
  AggregateMode aggregate_mode = AggregateMode::kDifficultyWeighted;
  std::string sweep = "0:1:0.1";

  std::string manifest;
  std::string parses;
  std::string embeddings;
  std::string episodes;
  std::string pair_distances;
  std::string out_dir = ".";
};

// Each command writes its files under config.out_dir and a short summary to
// `out`; diagnostics go to `err`. Returns an ExitCode.
int cmd_score(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_classify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_report(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv-style arguments (args[0] is the program name), then dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pride::cli

#endif  // PRIDE_CLI_H_
