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

#include "pride/trajectory.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>
#include <unordered_map>

#include "pride/error.h"
#include "pride/numeric.h"

namespace pride {

Trajectory Trajectory::from_values(std::size_t dimension, std::vector<double> values) {
  if (dimension < kPositionDims) {
    throw Error(ErrorCode::kDimensionMismatch,
                "state dimension " + std::to_string(dimension) +
                    " is below the 3 position channels");
  }
  if (values.size() % dimension != 0) {
    throw Error(ErrorCode::kRaggedRows, "value count is not a multiple of the dimension");
  }
  if (values.size() / dimension < 2) {
    throw Error(ErrorCode::kTooShort, "trajectory needs at least 2 points");
  }
  Trajectory t;
  t.dimension_ = dimension;
  t.values_ = std::move(values);
  return t;
}

Trajectory Trajectory::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.size() < 2) {
    throw Error(ErrorCode::kTooShort, "trajectory needs at least 2 points, got " +
                                          std::to_string(rows.size()));
  }
  const std::size_t dim = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) {
      throw Error(ErrorCode::kRaggedRows,
                  "row " + std::to_string(i) + " has width " +
                      std::to_string(rows[i].size()) + ", expected " +
                      std::to_string(dim));
    }
    values.insert(values.end(), rows[i].begin(), rows[i].end());
  }
  return from_values(dim, std::move(values));
}

std::vector<std::vector<double>> Trajectory::rows() const {
  std::vector<std::vector<double>> out;
  out.reserve(length());
  for (std::size_t i = 0; i < length(); ++i) {
    auto p = point(i);
    out.emplace_back(p.begin(), p.end());
  }
  return out;
}

Trajectory Trajectory::prefix(std::size_t n) const {
  n = std::clamp<std::size_t>(n, 2, length());
  return from_values(dimension_, std::vector<double>(values_.begin(),
                                                     values_.begin() + n * dimension_));
}

Trajectory Trajectory::positions() const {
  if (dimension_ == kPositionDims) return *this;
  std::vector<double> values;
  values.reserve(length() * kPositionDims);
  for (std::size_t i = 0; i < length(); ++i) {
    auto p = point(i);
    values.insert(values.end(), p.begin(), p.begin() + kPositionDims);
  }
  return from_values(kPositionDims, std::move(values));
}

std::string_view tau_rule_name(TauRule rule) {
  switch (rule) {
    case TauRule::kMax: return "max";
    case TauRule::kP99: return "p99";
    case TauRule::kP95: return "p95";
    case TauRule::kP90: return "p90";
  }
  return "max";
}

std::optional<TauRule> parse_tau_rule(std::string_view name) {
  for (TauRule r : kAllTauRules) {
    if (tau_rule_name(r) == name) return r;
  }
  return std::nullopt;
}

double tau_rule_percent(TauRule rule) {
  switch (rule) {
    case TauRule::kMax: return 100.0;
    case TauRule::kP99: return 99.0;
    case TauRule::kP95: return 95.0;
    case TauRule::kP90: return 90.0;
  }
  return 100.0;
}

std::string_view failure_label_name(FailureLabel label) {
  switch (label) {
    case FailureLabel::kNearGT: return "near_gt";
    case FailureLabel::kFarGT: return "far_gt";
    case FailureLabel::kUnclassifiable: return "unclassifiable";
  }
  return "unclassifiable";
}

Trajectory resample(const Trajectory& traj, std::size_t k) {
  const std::size_t n = traj.length();
  if (n < 2) throw Error(ErrorCode::kTooShort, "cannot resample fewer than 2 points");
  if (k < 2) throw Error(ErrorCode::kBadK, "resample size must be at least 2");
  const std::size_t dim = traj.dimension();
  std::vector<double> out;
  out.reserve(k * dim);
  for (std::size_t j = 0; j < k; ++j) {
    // Exact when k == n, and exactly n-1 at the last sample.
    const double pos = static_cast<double>(j * (n - 1)) / static_cast<double>(k - 1);
    const auto lo = std::min(static_cast<std::size_t>(std::floor(pos)), n - 1);
    const double frac = pos - static_cast<double>(lo);
    auto a = traj.point(lo);
    if (lo == n - 1 || frac == 0.0) {
      out.insert(out.end(), a.begin(), a.end());
      continue;
    }
    auto b = traj.point(lo + 1);
    for (std::size_t d = 0; d < dim; ++d) out.push_back(a[d] + frac * (b[d] - a[d]));
  }
  return Trajectory::from_values(dim, std::move(out));
}

namespace {

double position_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t d = 0; d < kPositionDims; ++d) {
    const double diff = a[d] - b[d];
    s += diff * diff;
  }
  return std::sqrt(s);
}

struct Cell {
  double cost;
  std::size_t length;

  bool operator<(const Cell& o) const {
    return cost < o.cost || (cost == o.cost && length < o.length);
  }
};

}  // namespace

DtwAlignment dtw_alignment(const Trajectory& a, const Trajectory& b) {
  if (a.length() == 0 || b.length() == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "DTW of an empty trajectory");
  }
  if (a.dimension() != b.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "DTW between dimensions " + std::to_string(a.dimension()) + " and " +
                    std::to_string(b.dimension()));
  }
  const std::size_t n = a.length();
  const std::size_t m = b.length();
  std::vector<Cell> prev(m), cur(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double c = position_distance(a.point(i), b.point(j));
      if (i == 0 && j == 0) {
        cur[j] = {c, 1};
        continue;
      }
      Cell best{INFINITY, 0};
      if (i > 0) best = std::min(best, prev[j]);
      if (j > 0) best = std::min(best, cur[j - 1]);
      if (i > 0 && j > 0) best = std::min(best, prev[j - 1]);
      cur[j] = {best.cost + c, best.length + 1};
    }
    std::swap(prev, cur);
  }
  return {prev[m - 1].cost, prev[m - 1].length};
}

double dtw_distance(const Trajectory& a, const Trajectory& b) {
  const DtwAlignment al = dtw_alignment(a, b);
  return al.total_cost / static_cast<double>(al.path_length);
}

namespace {

Trajectory mean_of_resampled(const std::vector<const Trajectory*>& trajectories,
                             std::size_t k) {
  std::vector<CompensatedSum> sums(k * kPositionDims);
  for (const Trajectory* t : trajectories) {
    const Trajectory r = resample(t->positions(), k);
    for (std::size_t i = 0; i < k; ++i) {
      auto p = r.point(i);
      for (std::size_t d = 0; d < kPositionDims; ++d) sums[i * kPositionDims + d].add(p[d]);
    }
  }
  std::vector<double> values;
  values.reserve(sums.size());
  const double count = static_cast<double>(trajectories.size());
  for (const CompensatedSum& s : sums) values.push_back(s.value() / count);
  return Trajectory::from_values(kPositionDims, std::move(values));
}

}  // namespace

Trajectory build_pseudo_gt(std::span<const Episode> successes, std::size_t k) {
  if (k < 2) throw Error(ErrorCode::kBadK, "resample size must be at least 2");
  std::vector<const Trajectory*> trajectories;
  for (const Episode& e : successes) {
    if (e.success) trajectories.push_back(&e.trajectory);
  }
  if (trajectories.empty()) {
    throw Error(ErrorCode::kNoSuccesses, "pseudo-GT needs at least one success");
  }
  return mean_of_resampled(trajectories, k);
}

double percentile(std::span<const double> values, double p) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "percentile of no values");
  if (!(p > 0.0 && p <= 100.0)) {
    throw Error(ErrorCode::kDegenerateInput, "percentile rank outside (0, 100]");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double index = p / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(index));
  const auto hi = static_cast<std::size_t>(std::ceil(index));
  const double frac = index - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

namespace {

using GroupKey = std::pair<std::string, int>;

template <typename T>
std::map<GroupKey, std::vector<std::size_t>> group_indices(std::span<const T> items) {
  std::map<GroupKey, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < items.size(); ++i) {
    groups[{items[i].model, items[i].task_id}].push_back(i);
  }
  return groups;
}

}  // namespace

std::vector<EpisodeDistance> score_episodes(std::span<const Episode> episodes,
                                            std::size_t k) {
  if (episodes.empty()) throw Error(ErrorCode::kEmptyInput, "no episodes to classify");
  if (k < 2) throw Error(ErrorCode::kBadK, "resample size must be at least 2");

  std::vector<EpisodeDistance> out(episodes.size());
  for (std::size_t i = 0; i < episodes.size(); ++i) {
    const Episode& e = episodes[i];
    out[i] = EpisodeDistance{e.episode_id, e.model, e.task_id, e.success, std::nullopt};
  }

  for (const auto& [key, members] : group_indices(episodes)) {
    std::vector<std::size_t> successes;
    for (std::size_t i : members) {
      if (episodes[i].success) successes.push_back(i);
    }
    if (successes.empty()) continue;
    // Canonical order so the mean does not depend on input order.
    std::sort(successes.begin(), successes.end(), [&](std::size_t x, std::size_t y) {
      return std::tie(episodes[x].episode_id, x) < std::tie(episodes[y].episode_id, y);
    });
    std::vector<const Trajectory*> success_trajs;
    std::size_t longest = 0;
    for (std::size_t i : successes) {
      success_trajs.push_back(&episodes[i].trajectory);
      longest = std::max(longest, episodes[i].trajectory.length());
    }
    const Trajectory gt = mean_of_resampled(success_trajs, k);
    for (std::size_t i : members) {
      const Trajectory r = resample(episodes[i].trajectory.prefix(longest).positions(), k);
      out[i].distance = dtw_distance(r, gt);
    }
  }
  return out;
}

std::vector<ClassificationResult> label_failures(
    std::span<const EpisodeDistance> distances, TauRule rule) {
  std::map<GroupKey, double> tau;
  for (const auto& [key, members] : group_indices(distances)) {
    std::vector<double> success_d;
    for (std::size_t i : members) {
      if (distances[i].success && distances[i].distance) {
        success_d.push_back(*distances[i].distance);
      }
    }
    if (success_d.empty()) continue;
    tau[key] = rule == TauRule::kMax
                   ? *std::max_element(success_d.begin(), success_d.end())
                   : percentile(success_d, tau_rule_percent(rule));
  }

  std::vector<ClassificationResult> out;
  for (const EpisodeDistance& d : distances) {
    if (d.success) continue;
    ClassificationResult r{d.episode_id, d.model, d.task_id, std::nullopt,
                           FailureLabel::kUnclassifiable, std::nullopt, rule};
    auto it = tau.find({d.model, d.task_id});
    if (it != tau.end() && d.distance) {
      r.dtw_distance = d.distance;
      r.tau_used = it->second;
      r.label = *d.distance <= it->second ? FailureLabel::kNearGT : FailureLabel::kFarGT;
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ClassificationResult> classify_failures(std::span<const Episode> episodes,
                                                    std::size_t k, TauRule rule) {
  const std::vector<EpisodeDistance> distances = score_episodes(episodes, k);
  return label_failures(distances, rule);
}

std::vector<FailureBreakdown> summarize_failures(
    std::span<const EpisodeDistance> distances,
    std::span<const ClassificationResult> results) {
  std::map<GroupKey, FailureCounts> per_task;
  for (const EpisodeDistance& d : distances) {
    FailureCounts& c = per_task[{d.model, d.task_id}];
    ++c.episodes;
    if (d.success) ++c.successes;
  }
  for (const ClassificationResult& r : results) {
    FailureCounts& c = per_task[{r.model, r.task_id}];
    switch (r.label) {
      case FailureLabel::kNearGT: ++c.near_gt; break;
      case FailureLabel::kFarGT: ++c.far_gt; break;
      case FailureLabel::kUnclassifiable: ++c.unclassifiable; break;
    }
  }

  std::vector<FailureBreakdown> out;
  std::map<std::string, FailureCounts> pooled;
  for (const auto& [key, c] : per_task) {
    out.push_back({key.first, key.second, c});
    FailureCounts& p = pooled[key.first];
    p.episodes += c.episodes;
    p.successes += c.successes;
    p.near_gt += c.near_gt;
    p.far_gt += c.far_gt;
    p.unclassifiable += c.unclassifiable;
  }
  for (const auto& [model, c] : pooled) out.push_back({model, std::nullopt, c});
  return out;
}

}  // namespace pride
