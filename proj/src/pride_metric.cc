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

#include "pride/pride_metric.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <unordered_map>

#include "pride/error.h"
#include "pride/numeric.h"

namespace pride {
namespace {

std::string shortest(double v) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace

std::string_view aggregate_mode_name(AggregateMode mode) {
  return mode == AggregateMode::kRawMean ? "raw" : "weighted";
}

std::optional<AggregateMode> parse_aggregate_mode(std::string_view name) {
  if (name == "raw") return AggregateMode::kRawMean;
  if (name == "weighted") return AggregateMode::kDifficultyWeighted;
  return std::nullopt;
}

double paraphrase_distance(double s_k, double s_t, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::kAlphaOutOfRange,
                "alpha " + shortest(alpha) + " outside [0, 1]");
  }
  return std::clamp(1.0 - (alpha * s_k + (1.0 - alpha) * s_t), 0.0, 1.0);
}

PairDistance make_pair_distance(std::string pair_id, double s_k, double s_t,
                                double alpha) {
  return PairDistance{std::move(pair_id), s_k, s_t,
                      paraphrase_distance(s_k, s_t, alpha), alpha};
}

EpisodeScore make_episode_score(std::string episode_id, std::string model,
                                const PairDistance& pair, bool success) {
  return EpisodeScore{std::move(episode_id), pair.pair_id, std::move(model),
                      success, pair.pd, episode_pride(pair.pd, success)};
}

double aggregate_pride(std::span<const EpisodeScore> episodes, AggregateMode mode) {
  if (episodes.empty()) throw Error(ErrorCode::kEmptyInput, "no episodes to aggregate");
  CompensatedSum numerator;
  CompensatedSum denominator;
  for (const EpisodeScore& e : episodes) {
    numerator.add(episode_pride(e.pd, e.success));
    denominator.add(e.pd);
  }
  if (mode == AggregateMode::kRawMean) {
    return numerator.value() / static_cast<double>(episodes.size());
  }
  if (denominator.value() == 0.0) {
    throw Error(ErrorCode::kZeroTotalDifficulty,
                "every episode has zero paraphrase distance");
  }
  return numerator.value() / denominator.value();
}

double overestimation(double sr_percent, double pride_percent) {
  if (!(sr_percent > 0.0)) {
    throw Error(ErrorCode::kZeroSuccessRate, "success rate must be positive");
  }
  return (sr_percent - pride_percent) / sr_percent * 100.0;
}

SweepResult alpha_sweep(std::span<const PairDistance> pairs,
                        std::span<const EpisodeScore> episodes,
                        std::span<const double> alphas, AggregateMode mode) {
  std::unordered_map<std::string, const PairDistance*> by_id;
  for (const PairDistance& p : pairs) by_id.emplace(p.pair_id, &p);
  for (const EpisodeScore& e : episodes) {
    if (!by_id.contains(e.pair_id)) {
      throw Error(ErrorCode::kOrphanRecord,
                  "episode '" + e.episode_id + "' references unknown pair '" +
                      e.pair_id + "'");
    }
  }

  SweepResult result;
  std::vector<EpisodeScore> rescored(episodes.begin(), episodes.end());
  for (double alpha : alphas) {
    for (EpisodeScore& e : rescored) {
      const PairDistance& p = *by_id.at(e.pair_id);
      e.pd = paraphrase_distance(p.s_k, p.s_t, alpha);
      e.pride = episode_pride(e.pd, e.success);
    }
    result.points.push_back({alpha, aggregate_pride(rescored, mode)});
  }

  std::vector<double> xs, ys;
  for (const SweepPoint& pt : result.points) {
    xs.push_back(pt.alpha);
    ys.push_back(pt.value);
  }
  result.slope = least_squares_slope(xs, ys);
  return result;
}

namespace {

double parse_number(std::string_view text, std::string_view whole) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kMalformedLine,
                "bad sweep grid '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

std::vector<double> parse_sweep_grid(std::string_view spec) {
  const auto c1 = spec.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : spec.find(':', c1 + 1);
  if (c2 == std::string_view::npos || spec.find(':', c2 + 1) != std::string_view::npos) {
    throw Error(ErrorCode::kMalformedLine,
                "sweep grid must be start:end:step, got '" + std::string(spec) + "'");
  }
  const double start = parse_number(spec.substr(0, c1), spec);
  const double end = parse_number(spec.substr(c1 + 1, c2 - c1 - 1), spec);
  const double step = parse_number(spec.substr(c2 + 1), spec);
  if (!(step > 0.0) || end < start) {
    throw Error(ErrorCode::kMalformedLine,
                "sweep grid needs step > 0 and end >= start, got '" +
                    std::string(spec) + "'");
  }
  const double span = (end - start) / step;
  // Tolerate representation error so 0:1:0.1 yields 11 points ending at 1.
  const auto count = static_cast<long>(std::floor(span + 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count) + 1);
  for (long i = 0; i <= count; ++i) {
    out.push_back(i == count && std::fabs(span - count) < 1e-9 ? end
                                                               : start + i * step);
  }
  for (double a : out) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw Error(ErrorCode::kAlphaOutOfRange,
                  "sweep point " + shortest(a) + " outside [0, 1]");
    }
  }
  return out;
}

std::optional<double> least_squares_slope(std::span<const double> x,
                                          std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  const double n = static_cast<double>(x.size());
  const double mx = compensated_sum(x) / n;
  const double my = compensated_sum(y) / n;
  CompensatedSum sxy, sxx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy.add((x[i] - mx) * (y[i] - my));
    sxx.add((x[i] - mx) * (x[i] - mx));
  }
  if (sxx.value() == 0.0) return std::nullopt;
  return sxy.value() / sxx.value();
}

}  // namespace pride
