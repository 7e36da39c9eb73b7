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

// Object x Action cell grids, correlation and agreement statistics, and
// dataset-count validation.

#ifndef PRIDE_STATS_H_
#define PRIDE_STATS_H_

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pride/instruction.h"
#include "pride/io.h"
#include "pride/pride_metric.h"

namespace pride {

struct ScoredEpisode {
  EpisodeScore score;
  ObjectVariation object_var = ObjectVariation::kNone;
  ActionVariation action_var = ActionVariation::kNone;
};

// Statistics are absent (not zero) when a cell has no episodes or the
// aggregate is undefined.
struct CellStats {
  std::size_t n = 0;
  std::size_t successes = 0;
  std::size_t pairs = 0;
  std::optional<double> sr;       // percent
  std::optional<double> mean_pd;  // over the cell's distinct pairs
  std::optional<double> pride;    // aggregate, percent
};

class CellGrid {
 public:
  CellStats& at(ObjectVariation o, ActionVariation a) { return cells_[ordinal(o)][ordinal(a)]; }
  const CellStats& at(ObjectVariation o, ActionVariation a) const {
    return cells_[ordinal(o)][ordinal(a)];
  }

  std::size_t row_total(ObjectVariation o) const;
  std::size_t column_total(ActionVariation a) const;
  std::size_t total() const;

 private:
  std::array<std::array<CellStats, kActionVariationCount>, kObjectVariationCount> cells_{};
};

// Throws kUnknownVariationTag for an episode tagged (None, None).
CellGrid build_grid(std::span<const ScoredEpisode> episodes, AggregateMode mode);

// Sample Pearson correlation. Throws kLengthMismatch (also for n < 2) and
// kConstantSeries.
double pearson(std::span<const double> x, std::span<const double> y);

// Two-sided p-value of the t test for r with n points; nullopt when n < 3.
std::optional<double> pearson_p_value(double r, std::size_t n);

// Two-category Gwet AC1 for a complete items x raters matrix of 0/1 ratings.
// Throws kDegenerateInput for < 1 item, < 2 raters, ragged rows, non-binary
// ratings, or Pe = 1.
double gwet_ac1(const std::vector<std::vector<int>>& ratings);

enum class ValidationFlagKind { kIllegalCombination, kCountDeviation, kDuplicateId };

struct ValidationFlag {
  ValidationFlagKind kind;
  std::string detail;
};

struct ValidationOptions {
  std::size_t cell_target = 100;
  double max_relative_deviation = 0.5;
};

struct ValidationReport {
  std::size_t total = 0;
  std::array<std::array<std::size_t, kActionVariationCount>, kObjectVariationCount> cells{};
  std::array<std::size_t, kObjectVariationCount> row_totals{};
  std::array<std::size_t, kActionVariationCount> column_totals{};
  struct OriginalCount {
    std::string original_text;  // first text seen for the task
    std::size_t count = 0;
  };
  std::map<int, OriginalCount> per_task;
  std::vector<ValidationFlag> flags;

  bool ok() const { return flags.empty(); }
};

ValidationReport validate_dataset(std::span<const ManifestRecord> manifest,
                                  const ValidationOptions& options = {});

// Plain-text rendering: the Object x Action count table with marginals, the
// per-original counts, then one line per flag.
std::string format_validation_report(const ValidationReport& report);

}  // namespace pride

#endif  // PRIDE_STATS_H_
