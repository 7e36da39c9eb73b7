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

// Paraphrase distance, per-episode PRIDE, and model-level aggregates.

#ifndef PRIDE_PRIDE_METRIC_H_
#define PRIDE_PRIDE_METRIC_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pride {

inline constexpr double kDefaultAlpha = 0.5;

struct PairDistance {
  std::string pair_id;
  double s_k = 0.0;
  double s_t = 0.0;
  double pd = 0.0;
  double alpha = kDefaultAlpha;
};

struct EpisodeScore {
  std::string episode_id;
  std::string pair_id;
  std::string model;
  bool success = false;
  double pd = 0.0;
  double pride = 0.0;
};

enum class AggregateMode { kRawMean, kDifficultyWeighted };

std::string_view aggregate_mode_name(AggregateMode mode);  // "raw" / "weighted"
std::optional<AggregateMode> parse_aggregate_mode(std::string_view name);

// clamp(1 - (alpha*s_k + (1-alpha)*s_t), 0, 1). Throws kAlphaOutOfRange.
double paraphrase_distance(double s_k, double s_t, double alpha = kDefaultAlpha);

PairDistance make_pair_distance(std::string pair_id, double s_k, double s_t,
                                double alpha = kDefaultAlpha);

// pd on success, 0 on failure.
inline double episode_pride(double pd, bool success) { return success ? pd : 0.0; }

EpisodeScore make_episode_score(std::string episode_id, std::string model,
                                const PairDistance& pair, bool success);

// kRawMean: mean of per-episode PRIDE.
// kDifficultyWeighted: sum(pd * success) / sum(pd).
// Both are fractions in [0, 1]; multiply by 100 for reporting.
// Throws kEmptyInput, or kZeroTotalDifficulty for a weighted aggregate
// whose episodes all have pd = 0.
double aggregate_pride(std::span<const EpisodeScore> episodes, AggregateMode mode);

// (sr - pride) / sr * 100, both arguments in percent. Throws kZeroSuccessRate.
double overestimation(double sr_percent, double pride_percent);

struct SweepPoint {
  double alpha = 0.0;
  double value = 0.0;  // aggregate PRIDE as a fraction
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::optional<double> slope;  // least-squares d(value)/d(alpha)
};

// Recomputes every pair's PD at each alpha and aggregates the episodes
// against the recomputed values. Throws kAlphaOutOfRange, kOrphanRecord for
// an episode whose pair is not in `pairs`, or whatever aggregate_pride raises.
SweepResult alpha_sweep(std::span<const PairDistance> pairs,
                        std::span<const EpisodeScore> episodes,
                        std::span<const double> alphas, AggregateMode mode);

// start:end:step, both endpoints included when step divides the range.
std::vector<double> parse_sweep_grid(std::string_view spec);

// Least-squares slope of y on x; nullopt when x has no spread.
std::optional<double> least_squares_slope(std::span<const double> x,
                                          std::span<const double> y);

}  // namespace pride

#endif  // PRIDE_PRIDE_METRIC_H_
