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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "pride/cli.h"
#include "pride/error.h"
#include "pride/io.h"
#include "pride/pipeline.h"
#include "pride/stats.h"

namespace pride::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ReadError& e) {
    err << "error: " << e.source() << ": " << e.diagnostics().size() << " problem(s)\n";
    for (const Diagnostic& d : e.diagnostics()) err << "  " << format_diagnostic(d) << '\n';
    return kExitInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

void write_file(const RunConfig& config, const std::string& name, const std::string& body) {
  const fs::path dir = fs::absolute(config.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + (dir / name).string());
  out << body;
  if (!out) throw Error(ErrorCode::kIoFailure, "failed writing " + (dir / name).string());
}

std::string display_model(const std::string& model) {
  return model.empty() ? "all" : model;
}

double percent(std::size_t part, std::size_t whole) {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

std::optional<double> optional_percent(std::size_t part, std::size_t whole) {
  if (whole == 0) return std::nullopt;
  return percent(part, whole);
}

// Rounded for serialization; null when absent.
json rounded(const std::optional<double>& value, int decimals) {
  if (!value) return nullptr;
  double scale = 1.0;
  for (int i = 0; i < decimals; ++i) scale *= 10.0;
  const double r = std::round(*value * scale) / scale;
  return r == 0.0 ? 0.0 : r;
}

// Sorts descending by key; absent keys last, then by name.
template <typename Row>
void sort_desc(std::vector<Row>& rows, std::function<std::optional<double>(const Row&)> key,
               std::function<std::string(const Row&)> name) {
  std::stable_sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) {
    const auto ka = key(a), kb = key(b);
    if (ka.has_value() != kb.has_value()) return ka.has_value();
    if (ka && *ka != *kb) return *ka > *kb;
    return name(a) < name(b);
  });
}

std::string grid_matrix_csv(const CellGrid& grid,
                            const std::function<std::string(const CellStats&)>& value) {
  std::vector<std::string> header{"Object"};
  for (ActionVariation a : kAllActionVariations) header.emplace_back(action_label(a));
  std::string out = csv_row(header);
  for (ObjectVariation o : kAllObjectVariations) {
    std::vector<std::string> row{std::string(object_label(o))};
    for (ActionVariation a : kAllActionVariations) {
      row.push_back(is_legal_combination(o, a) ? value(grid.at(o, a)) : std::string());
    }
    out += csv_row(row);
  }
  return out;
}

std::string dataset_statistics_csv(const ValidationReport& report) {
  std::vector<std::string> header{"Object"};
  for (ActionVariation a : kAllActionVariations) header.emplace_back(action_label(a));
  header.emplace_back("Total");
  std::string out = csv_row(header);
  for (ObjectVariation o : kAllObjectVariations) {
    std::vector<std::string> row{std::string(object_label(o))};
    for (ActionVariation a : kAllActionVariations) {
      row.push_back(is_legal_combination(o, a)
                        ? std::to_string(report.cells[ordinal(o)][ordinal(a)])
                        : std::string("--"));
    }
    row.push_back(std::to_string(report.row_totals[ordinal(o)]));
    out += csv_row(row);
  }
  std::vector<std::string> total{"Total"};
  for (ActionVariation a : kAllActionVariations) {
    total.push_back(std::to_string(report.column_totals[ordinal(a)]));
  }
  total.push_back(std::to_string(report.total));
  out += csv_row(total);
  return out;
}

}  // namespace

// ------------------------------------------------------------------- score

int cmd_score(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    paraphrase_distance(1.0, 1.0, config.alpha);
    const std::vector<ManifestRecord> manifest = read_manifest(config.manifest);
    std::vector<Diagnostic> illegal;
    for (const ManifestRecord& r : manifest) {
      if (!is_legal_combination(r.object_var, r.action_var)) {
        illegal.push_back({ErrorCode::kUnknownVariationTag, 0,
                           "pair '" + r.pair_id + "' is tagged (none, none)"});
      }
    }
    if (!illegal.empty()) throw ReadError(config.manifest, std::move(illegal));

    const std::vector<Instruction> parses = read_parses(config.parses);
    const EmbeddingTable table = read_embeddings(config.embeddings);
    const std::vector<ParaphrasePair> pairs = build_pairs(manifest, parses);
    const std::vector<PairDistance> distances = score_pairs(pairs, table, config.alpha);

    std::ostringstream body;
    write_pair_distances(body, distances);
    write_file(config, "pair_distances.csv", body.str());
    out << "scored " << distances.size() << " pair(s) at alpha " << format_exact(config.alpha)
        << " -> pair_distances.csv\n";
    return kExitOk;
  });
}

// ---------------------------------------------------------------- classify

int cmd_classify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::vector<Episode> episodes = read_episodes(config.episodes);
    const std::vector<EpisodeDistance> distances = score_episodes(episodes, config.k);

    std::map<TauRule, std::vector<FailureBreakdown>> by_rule;
    std::vector<ClassificationResult> chosen;
    for (TauRule rule : kAllTauRules) {
      const auto results = label_failures(distances, rule);
      by_rule[rule] = summarize_failures(distances, results);
      if (rule == config.tau_rule) chosen = results;
    }

    std::string rows = csv_row({"episode_id", "model", "task_id", "dtw_distance", "label", "tau",
                                "tau_rule"});
    for (const ClassificationResult& r : chosen) {
      rows += csv_row({r.episode_id, display_model(r.model), std::to_string(r.task_id),
                       format_fixed(r.dtw_distance, 6), std::string(failure_label_name(r.label)),
                       format_fixed(r.tau_used, 6), std::string(tau_rule_name(r.tau_rule))});
    }
    write_file(config, "classification.csv", rows);

    const std::vector<FailureBreakdown>& breakdown = by_rule.at(config.tau_rule);
    std::string detail = csv_row({"model", "task_id", "episodes", "successes", "near_gt",
                                  "far_gt", "unclassifiable", "success_rate", "near_gt_pct",
                                  "far_gt_pct", "far_gt_of_failures_pct"});
    for (const FailureBreakdown& b : breakdown) {
      const FailureCounts& c = b.counts;
      detail += csv_row({display_model(b.model),
                         b.task_id ? std::to_string(*b.task_id) : std::string("all"),
                         std::to_string(c.episodes), std::to_string(c.successes),
                         std::to_string(c.near_gt), std::to_string(c.far_gt),
                         std::to_string(c.unclassifiable),
                         format_fixed(percent(c.successes, c.episodes), 1),
                         format_fixed(percent(c.near_gt, c.episodes), 1),
                         format_fixed(percent(c.far_gt, c.episodes), 1),
                         format_fixed(optional_percent(c.far_gt, c.near_gt + c.far_gt), 1)});
    }
    write_file(config, "failure_breakdown.csv", detail);

    // Pooled rows in the Model / Success Rate / Near-GT / Far-GT / Far-GT (%)
    // layout, sorted by the last column.
    std::vector<FailureBreakdown> pooled;
    for (const FailureBreakdown& b : breakdown) {
      if (!b.task_id) pooled.push_back(b);
    }
    sort_desc<FailureBreakdown>(
        pooled,
        [](const FailureBreakdown& b) {
          return optional_percent(b.counts.far_gt, b.counts.near_gt + b.counts.far_gt);
        },
        [](const FailureBreakdown& b) { return b.model; });
    std::string summary = csv_row({"Model", "Success Rate", "Near-GT", "Far-GT", "Far-GT (%)"});
    for (const FailureBreakdown& b : pooled) {
      const FailureCounts& c = b.counts;
      summary += csv_row({display_model(b.model), format_fixed(percent(c.successes, c.episodes), 1),
                          format_fixed(percent(c.near_gt, c.episodes), 1),
                          format_fixed(percent(c.far_gt, c.episodes), 1),
                          format_fixed(optional_percent(c.far_gt, c.near_gt + c.far_gt), 1)});
    }
    write_file(config, "failure_summary.csv", summary);

    std::vector<std::string> header{"Model"};
    for (TauRule r : kAllTauRules) header.push_back("Near-GT " + std::string(tau_rule_name(r)));
    for (TauRule r : kAllTauRules) header.push_back("Far-GT " + std::string(tau_rule_name(r)));
    std::string ablation = csv_row(header);
    std::map<std::string, std::map<TauRule, FailureCounts>> pooled_by_rule;
    for (TauRule rule : kAllTauRules) {
      for (const FailureBreakdown& b : by_rule.at(rule)) {
        if (!b.task_id) pooled_by_rule[b.model][rule] = b.counts;
      }
    }
    for (const auto& [model, per_rule] : pooled_by_rule) {
      std::vector<std::string> row{display_model(model)};
      for (TauRule r : kAllTauRules) {
        row.push_back(format_fixed(percent(per_rule.at(r).near_gt, per_rule.at(r).episodes), 1));
      }
      for (TauRule r : kAllTauRules) {
        row.push_back(format_fixed(percent(per_rule.at(r).far_gt, per_rule.at(r).episodes), 1));
      }
      ablation += csv_row(row);
    }
    write_file(config, "tau_ablation.csv", ablation);

    std::size_t near = 0, far = 0, unclassifiable = 0;
    for (const ClassificationResult& r : chosen) {
      near += r.label == FailureLabel::kNearGT;
      far += r.label == FailureLabel::kFarGT;
      unclassifiable += r.label == FailureLabel::kUnclassifiable;
    }
    out << "episodes: " << episodes.size() << ", failures: " << chosen.size()
        << " (near_gt " << near << ", far_gt " << far << ", unclassifiable " << unclassifiable
        << ") with tau rule " << tau_rule_name(config.tau_rule) << ", k " << config.k << '\n';
    out << "wrote classification.csv, failure_breakdown.csv, failure_summary.csv, "
           "tau_ablation.csv\n";
    return kExitOk;
  });
}

// ------------------------------------------------------------------ report

int cmd_report(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::vector<ManifestRecord> manifest = read_manifest(config.manifest);
    const std::vector<PairDistance> distances = read_pair_distances(config.pair_distances);
    const std::vector<Episode> episodes = read_episodes(config.episodes);
    const std::vector<double> alphas =
        config.sweep.empty() ? std::vector<double>{} : parse_sweep_grid(config.sweep);
    const std::vector<ScoredEpisode> scored = join_episodes(manifest, distances, episodes);
    const AggregateMode mode = config.aggregate_mode;

    std::map<std::string, std::vector<ScoredEpisode>> by_model;
    for (const ScoredEpisode& s : scored) by_model[s.score.model].push_back(s);

    json summary = {{"format_version", kFormatVersion},
                    {"aggregate_mode", aggregate_mode_name(mode)},
                    {"episodes", scored.size()},
                    {"pairs", distances.size()}};

    // Cell grids over every episode.
    const CellGrid grid = build_grid(scored, mode);
    write_file(config, "grid_sr.csv", grid_matrix_csv(grid, [](const CellStats& c) {
                 return format_fixed(c.sr, 1);
               }));
    write_file(config, "grid_mean_pd.csv", grid_matrix_csv(grid, [](const CellStats& c) {
                 return format_fixed(c.mean_pd, 2);
               }));
    write_file(config, "grid_pride.csv", grid_matrix_csv(grid, [](const CellStats& c) {
                 return format_fixed(c.pride, 1);
               }));
    write_file(config, "dataset_statistics.csv",
               dataset_statistics_csv(validate_dataset(manifest)));

    std::string cells = csv_row({"model", "object", "action", "n", "successes", "pairs", "sr",
                                 "mean_pd", "pride"});
    auto cell_rows = [&](const std::string& model, const CellGrid& g) {
      for (auto [o, a] : legal_combinations()) {
        const CellStats& c = g.at(o, a);
        cells += csv_row({model, std::string(object_tag(o)), std::string(action_tag(a)),
                          std::to_string(c.n), std::to_string(c.successes),
                          std::to_string(c.pairs), format_fixed(c.sr, 1),
                          format_fixed(c.mean_pd, 2), format_fixed(c.pride, 1)});
      }
    };

    struct ModelRow {
      std::string model;
      double sr = 0.0;
      std::optional<double> pride;
      std::optional<double> over;
    };
    std::vector<ModelRow> model_rows;
    std::string sweep_rows = csv_row({"model", "alpha", "pride"});
    std::string slope_rows = csv_row({"model", "slope"});
    std::string pearson_rows = csv_row({"model", "points", "r", "p_value"});
    json models = json::array();

    for (const auto& [model, eps] : by_model) {
      const std::string name = display_model(model);
      std::vector<EpisodeScore> scores;
      std::size_t successes = 0;
      for (const ScoredEpisode& s : eps) {
        scores.push_back(s.score);
        successes += s.score.success;
      }
      ModelRow row{name, percent(successes, scores.size()), std::nullopt, std::nullopt};
      try {
        row.pride = 100.0 * aggregate_pride(scores, mode);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kZeroTotalDifficulty) throw;
      }
      if (row.pride && row.sr > 0.0) row.over = overestimation(row.sr, *row.pride);
      model_rows.push_back(row);

      const CellGrid model_grid = build_grid(eps, mode);
      cell_rows(name, model_grid);

      // Sweep, one alpha at a time so an undefined point leaves the rest.
      std::vector<double> xs, ys;
      json sweep = json::array();
      for (double alpha : alphas) {
        std::optional<double> value;
        try {
          const double a[] = {alpha};
          value = 100.0 * alpha_sweep(distances, scores, a, mode).points.front().value;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kZeroTotalDifficulty) throw;
        }
        if (value) {
          xs.push_back(alpha);
          ys.push_back(*value);
        }
        sweep_rows += csv_row({name, format_fixed(alpha, 2), format_fixed(value, 1)});
        sweep.push_back({{"alpha", alpha}, {"pride", rounded(value, 1)}});
      }
      const std::optional<double> slope = least_squares_slope(xs, ys);
      slope_rows += csv_row({name, format_fixed(slope, 2)});

      // Pearson over the model's populated cells: mean PD against SR.
      std::vector<double> pd_points, sr_points;
      for (auto [o, a] : legal_combinations()) {
        const CellStats& c = model_grid.at(o, a);
        if (c.n == 0) continue;
        pd_points.push_back(*c.mean_pd);
        sr_points.push_back(*c.sr);
      }
      std::optional<double> r, p;
      try {
        r = pearson(pd_points, sr_points);
        p = pearson_p_value(*r, pd_points.size());
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kConstantSeries && e.code() != ErrorCode::kLengthMismatch) {
          throw;
        }
      }
      char pbuf[32] = "";
      if (p) std::snprintf(pbuf, sizeof(pbuf), "%.4g", *p);
      pearson_rows += csv_row({name, std::to_string(pd_points.size()), format_fixed(r, 3), pbuf});

      models.push_back({{"model", name},
                        {"episodes", scores.size()},
                        {"sr", rounded(row.sr, 1)},
                        {"pride", rounded(row.pride, 1)},
                        {"overestimation", rounded(row.over, 1)},
                        {"sweep", sweep},
                        {"sweep_slope", rounded(slope, 2)},
                        {"pearson_r", rounded(r, 3)},
                        {"pearson_p", p ? json(*p) : json(nullptr)},
                        {"pearson_points", pd_points.size()}});
    }
    summary["models"] = models;

    sort_desc<ModelRow>(
        model_rows, [](const ModelRow& r) { return r.over; },
        [](const ModelRow& r) { return r.model; });
    std::string over_rows = csv_row({"Method", "SR", "PRIDE", "Overestimation (%)"});
    for (const ModelRow& r : model_rows) {
      over_rows += csv_row({r.model, format_fixed(r.sr, 1), format_fixed(r.pride, 1),
                            format_fixed(r.over, 1)});
    }

    json grid_json = json::array();
    for (auto [o, a] : legal_combinations()) {
      const CellStats& c = grid.at(o, a);
      grid_json.push_back({{"object", object_tag(o)},
                           {"action", action_tag(a)},
                           {"n", c.n},
                           {"sr", rounded(c.sr, 1)},
                           {"mean_pd", rounded(c.mean_pd, 2)},
                           {"pride", rounded(c.pride, 1)}});
    }
    summary["grid"] = grid_json;

    write_file(config, "overestimation.csv", over_rows);
    write_file(config, "cell_model.csv", cells);
    write_file(config, "sweep.csv", sweep_rows);
    write_file(config, "sweep_slope.csv", slope_rows);
    write_file(config, "pearson.csv", pearson_rows);
    write_file(config, "summary.json", summary.dump(2) + "\n");

    out << "aggregate mode: " << aggregate_mode_name(mode) << '\n';
    for (const ModelRow& r : model_rows) {
      out << r.model << ": SR " << format_fixed(r.sr, 1) << ", PRIDE "
          << (r.pride ? format_fixed(*r.pride, 1) : "n/a") << ", overestimation "
          << (r.over ? format_fixed(*r.over, 1) : "n/a") << "%\n";
    }
    out << "wrote grid_sr.csv, grid_mean_pd.csv, grid_pride.csv, dataset_statistics.csv, "
           "overestimation.csv, cell_model.csv, sweep.csv, sweep_slope.csv, pearson.csv, "
           "summary.json\n";
    return kExitOk;
  });
}

// ---------------------------------------------------------------- validate

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ManifestReadOptions options;
    options.reject_duplicate_ids = false;
    const std::vector<ManifestRecord> manifest = read_manifest(config.manifest, options);
    const ValidationReport report = validate_dataset(manifest);
    out << format_validation_report(report);
    return report.ok() ? kExitOk : kExitFindings;
  });
}

}  // namespace pride::cli
