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

// Trajectory-based failure classification: per-task pseudo ground truth
// from successful rollouts, length-normalized DTW against it, and a
// success-derived threshold splitting failures into Near-GT and Far-GT.

#ifndef PRIDE_TRAJECTORY_H_
#define PRIDE_TRAJECTORY_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pride {

inline constexpr std::size_t kDefaultResampleSize = 50;
inline constexpr std::size_t kPositionDims = 3;

// Row-major sequence of state vectors. The first three dimensions are the
// end-effector position.
class Trajectory {
 public:
  // Throws kTooShort (< 2 points), kRaggedRows, or kDimensionMismatch
  // (dimension < 3).
  static Trajectory from_rows(const std::vector<std::vector<double>>& rows);
  // Same checks over row-major values.
  static Trajectory from_values(std::size_t dimension, std::vector<double> values);

  Trajectory() = default;

  std::size_t length() const { return dimension_ == 0 ? 0 : values_.size() / dimension_; }
  std::size_t dimension() const { return dimension_; }
  std::span<const double> point(std::size_t i) const {
    return {values_.data() + i * dimension_, dimension_};
  }
  std::vector<std::vector<double>> rows() const;

  // First `n` points (all of them if n >= length()); keeps at least 2.
  Trajectory prefix(std::size_t n) const;
  // Position channel only.
  Trajectory positions() const;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  std::size_t dimension_ = 0;
  std::vector<double> values_;
};

struct Episode {
  std::string episode_id;
  std::string model;  // empty when the file covers a single model
  int task_id = 0;
  std::string pair_id;
  long long seed = 0;
  bool success = false;
  Trajectory trajectory;
};

enum class TauRule { kMax, kP99, kP95, kP90 };
inline constexpr TauRule kAllTauRules[] = {TauRule::kMax, TauRule::kP99,
                                           TauRule::kP95, TauRule::kP90};

std::string_view tau_rule_name(TauRule rule);  // "max", "p99", ...
std::optional<TauRule> parse_tau_rule(std::string_view name);
double tau_rule_percent(TauRule rule);  // 100, 99, 95, 90

enum class FailureLabel { kNearGT, kFarGT, kUnclassifiable };
std::string_view failure_label_name(FailureLabel label);

struct ClassificationResult {
  std::string episode_id;
  std::string model;
  int task_id = 0;
  std::optional<double> dtw_distance;  // absent when unclassifiable
  FailureLabel label = FailureLabel::kUnclassifiable;
  std::optional<double> tau_used;
  TauRule tau_rule = TauRule::kMax;
};

// k points at uniform normalized time, linear interpolation per dimension.
// Endpoints are reproduced exactly. Throws kTooShort or kBadK.
Trajectory resample(const Trajectory& traj, std::size_t k);

struct DtwAlignment {
  double total_cost = 0.0;
  std::size_t path_length = 0;
};

// Exact DTW over the position channel with Euclidean local cost and steps
// (1,0), (0,1), (1,1), both endpoints anchored. Among minimum-cost paths the
// shortest is taken. Throws kDimensionMismatch.
DtwAlignment dtw_alignment(const Trajectory& a, const Trajectory& b);

// total_cost / path_length of dtw_alignment.
double dtw_distance(const Trajectory& a, const Trajectory& b);

// Pointwise mean of the successes' position channels after resampling to k.
// Throws kNoSuccesses when no episode in the span succeeded.
Trajectory build_pseudo_gt(std::span<const Episode> successes, std::size_t k);

// Linear-interpolation percentile over the sorted values, p in (0, 100].
// Throws kEmptyInput.
double percentile(std::span<const double> values, double p);

// Phase one: every episode's distance to its group's pseudo-GT. Groups are
// (model, task_id). Distance is absent for groups without successes.
struct EpisodeDistance {
  std::string episode_id;
  std::string model;
  int task_id = 0;
  bool success = false;
  std::optional<double> distance;
};

// Output follows input order. Throws kEmptyInput or kBadK.
std::vector<EpisodeDistance> score_episodes(std::span<const Episode> episodes,
                                            std::size_t k = kDefaultResampleSize);

// Phase two: label the failures given the group thresholds implied by `rule`.
std::vector<ClassificationResult> label_failures(
    std::span<const EpisodeDistance> distances, TauRule rule);

// Both phases. Only failures get a result, in input order.
std::vector<ClassificationResult> classify_failures(
    std::span<const Episode> episodes, std::size_t k = kDefaultResampleSize,
    TauRule rule = TauRule::kMax);

struct FailureCounts {
  std::size_t episodes = 0;
  std::size_t successes = 0;
  std::size_t near_gt = 0;
  std::size_t far_gt = 0;
  std::size_t unclassifiable = 0;

  std::size_t failures() const { return episodes - successes; }
};

struct FailureBreakdown {
  std::string model;
  std::optional<int> task_id;  // absent for the pooled row
  FailureCounts counts;
};

// Per (model, task) rows followed by one pooled row per model, models in
// sorted order, tasks ascending.
std::vector<FailureBreakdown> summarize_failures(
    std::span<const EpisodeDistance> distances,
    std::span<const ClassificationResult> results);

}  // namespace pride

#endif  // PRIDE_TRAJECTORY_H_
