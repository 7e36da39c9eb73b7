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

#include "pride/stats.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <boost/math/distributions/students_t.hpp>

#include "pride/error.h"
#include "pride/numeric.h"

namespace pride {

std::size_t CellGrid::row_total(ObjectVariation o) const {
  std::size_t n = 0;
  for (const CellStats& c : cells_[ordinal(o)]) n += c.n;
  return n;
}

std::size_t CellGrid::column_total(ActionVariation a) const {
  std::size_t n = 0;
  for (const auto& row : cells_) n += row[ordinal(a)].n;
  return n;
}

std::size_t CellGrid::total() const {
  std::size_t n = 0;
  for (ObjectVariation o : kAllObjectVariations) n += row_total(o);
  return n;
}

CellGrid build_grid(std::span<const ScoredEpisode> episodes, AggregateMode mode) {
  std::array<std::array<std::vector<EpisodeScore>, kActionVariationCount>,
             kObjectVariationCount>
      members;
  for (const ScoredEpisode& e : episodes) {
    if (!is_legal_combination(e.object_var, e.action_var)) {
      throw Error(ErrorCode::kUnknownVariationTag,
                  "episode '" + e.score.episode_id + "' is tagged (none, none)");
    }
    members[ordinal(e.object_var)][ordinal(e.action_var)].push_back(e.score);
  }

  CellGrid grid;
  for (ObjectVariation o : kAllObjectVariations) {
    for (ActionVariation a : kAllActionVariations) {
      const auto& cell_eps = members[ordinal(o)][ordinal(a)];
      CellStats& c = grid.at(o, a);
      c.n = cell_eps.size();
      if (cell_eps.empty()) continue;
      std::unordered_map<std::string, double> pair_pd;
      for (const EpisodeScore& s : cell_eps) {
        if (s.success) ++c.successes;
        pair_pd.emplace(s.pair_id, s.pd);
      }
      c.pairs = pair_pd.size();
      c.sr = 100.0 * static_cast<double>(c.successes) / static_cast<double>(c.n);
      // Sorted by pair id so the mean is independent of episode order.
      std::vector<std::pair<std::string, double>> sorted(pair_pd.begin(), pair_pd.end());
      std::sort(sorted.begin(), sorted.end());
      CompensatedSum pd_sum;
      for (const auto& [id, pd] : sorted) pd_sum.add(pd);
      c.mean_pd = pd_sum.value() / static_cast<double>(sorted.size());
      try {
        c.pride = 100.0 * aggregate_pride(cell_eps, mode);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kZeroTotalDifficulty) throw;
      }
    }
  }
  return grid;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::kLengthMismatch,
                "pearson needs two series of equal length >= 2 (got " +
                    std::to_string(x.size()) + " and " + std::to_string(y.size()) + ")");
  }
  const double n = static_cast<double>(x.size());
  const double mx = compensated_sum(x) / n;
  const double my = compensated_sum(y) / n;
  CompensatedSum sxy, sxx, syy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy.add(dx * dy);
    sxx.add(dx * dx);
    syy.add(dy * dy);
  }
  if (sxx.value() == 0.0 || syy.value() == 0.0) {
    throw Error(ErrorCode::kConstantSeries, "pearson of a constant series");
  }
  return std::clamp(sxy.value() / std::sqrt(sxx.value() * syy.value()), -1.0, 1.0);
}

std::optional<double> pearson_p_value(double r, std::size_t n) {
  if (n < 3) return std::nullopt;
  if (std::fabs(r) >= 1.0) return 0.0;
  const double df = static_cast<double>(n - 2);
  const double t = r * std::sqrt(df / (1.0 - r * r));
  const boost::math::students_t dist(df);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
}

double gwet_ac1(const std::vector<std::vector<int>>& ratings) {
  if (ratings.empty()) throw Error(ErrorCode::kDegenerateInput, "AC1 needs at least one item");
  const std::size_t raters = ratings.front().size();
  if (raters < 2) throw Error(ErrorCode::kDegenerateInput, "AC1 needs at least two raters");

  CompensatedSum agreement;
  std::size_t positives = 0;
  for (const auto& item : ratings) {
    if (item.size() != raters) {
      throw Error(ErrorCode::kDegenerateInput, "every item needs one rating per rater");
    }
    std::size_t yes = 0;
    for (int r : item) {
      if (r != 0 && r != 1) throw Error(ErrorCode::kDegenerateInput, "ratings must be 0 or 1");
      yes += static_cast<std::size_t>(r);
    }
    const double y = static_cast<double>(yes);
    const double n = static_cast<double>(raters - yes);
    const double r = static_cast<double>(raters);
    // Share of agreeing ordered rater pairs on this item.
    agreement.add((y * (y - 1.0) + n * (n - 1.0)) / (r * (r - 1.0)));
    positives += yes;
  }
  const double pa = agreement.value() / static_cast<double>(ratings.size());
  const double pi = static_cast<double>(positives) /
                    static_cast<double>(ratings.size() * raters);
  const double pe = 2.0 * pi * (1.0 - pi);
  if (pe >= 1.0) throw Error(ErrorCode::kDegenerateInput, "chance agreement is 1");
  return (pa - pe) / (1.0 - pe);
}

ValidationReport validate_dataset(std::span<const ManifestRecord> manifest,
                                  const ValidationOptions& options) {
  ValidationReport report;
  std::unordered_set<std::string> seen;
  std::set<std::string> duplicates;
  for (const ManifestRecord& r : manifest) {
    ++report.total;
    ++report.cells[ordinal(r.object_var)][ordinal(r.action_var)];
    ++report.row_totals[ordinal(r.object_var)];
    ++report.column_totals[ordinal(r.action_var)];
    auto& per = report.per_task[r.task_id];
    if (per.count++ == 0) per.original_text = r.original_text;
    if (!is_legal_combination(r.object_var, r.action_var)) {
      report.flags.push_back({ValidationFlagKind::kIllegalCombination,
                              "pair '" + r.pair_id + "' is tagged (none, none)"});
    }
    if (!seen.insert(r.pair_id).second && duplicates.insert(r.pair_id).second) {
      report.flags.push_back(
          {ValidationFlagKind::kDuplicateId, "pair_id '" + r.pair_id + "' appears more than once"});
    }
  }
  const double target = static_cast<double>(options.cell_target);
  for (auto [o, a] : legal_combinations()) {
    const double n = static_cast<double>(report.cells[ordinal(o)][ordinal(a)]);
    if (std::fabs(n - target) > options.max_relative_deviation * target) {
      report.flags.push_back(
          {ValidationFlagKind::kCountDeviation,
           "cell (" + std::string(object_tag(o)) + ", " + std::string(action_tag(a)) +
               ") has " + std::to_string(static_cast<std::size_t>(n)) +
               " pairs, target " + std::to_string(options.cell_target)});
    }
  }
  return report;
}

namespace {

std::string_view flag_kind_name(ValidationFlagKind kind) {
  switch (kind) {
    case ValidationFlagKind::kIllegalCombination: return "illegal";
    case ValidationFlagKind::kCountDeviation: return "deviation";
    case ValidationFlagKind::kDuplicateId: return "duplicate";
  }
  return "flag";
}

}  // namespace

std::string format_validation_report(const ValidationReport& report) {
  std::ostringstream out;
  out << "Object";
  for (ActionVariation a : kAllActionVariations) out << '\t' << action_label(a);
  out << "\tTotal\n";
  for (ObjectVariation o : kAllObjectVariations) {
    out << object_label(o);
    for (ActionVariation a : kAllActionVariations) {
      out << '\t';
      if (is_legal_combination(o, a)) out << report.cells[ordinal(o)][ordinal(a)];
      else out << "--";
    }
    out << '\t' << report.row_totals[ordinal(o)] << '\n';
  }
  out << "Total";
  for (ActionVariation a : kAllActionVariations) out << '\t' << report.column_totals[ordinal(a)];
  out << '\t' << report.total << "\n\n";

  out << "task\toriginal\tcount\n";
  for (const auto& [task, per] : report.per_task) {
    out << task << '\t' << per.original_text << '\t' << per.count << '\n';
  }
  out << "total\t\t" << report.total << "\n\n";

  out << "flags: " << report.flags.size() << '\n';
  for (const ValidationFlag& f : report.flags) {
    out << flag_kind_name(f.kind) << ": " << f.detail << '\n';
  }
  return out.str();
}

}  // namespace pride
