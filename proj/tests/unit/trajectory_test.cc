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
#include <map>

#include "doctest.h"
#include "pride/error.h"
#include "support/generators.h"
#include "support/oracles.h"

namespace pride {
namespace {

using testdata::line_trajectory;
using testdata::make_episode;
using testdata::threshold_fixture;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kIoFailure;
}

Trajectory rows(std::vector<std::vector<double>> r) { return Trajectory::from_rows(r); }

std::map<std::string, FailureLabel> labels_by_id(const std::vector<ClassificationResult>& r) {
  std::map<std::string, FailureLabel> out;
  for (const auto& c : r) out[c.episode_id] = c.label;
  return out;
}

TEST_CASE("trajectory construction checks shape") {
  CHECK(code_of([] { rows({{0, 0, 0}}); }) == ErrorCode::kTooShort);
  CHECK(code_of([] { rows({{0, 0, 0}, {1, 1}}); }) == ErrorCode::kRaggedRows);
  CHECK(code_of([] { rows({{0, 0}, {1, 1}}); }) == ErrorCode::kDimensionMismatch);
  const auto t = rows({{0, 1, 2, 9}, {3, 4, 5, 9}, {6, 7, 8, 9}});
  CHECK(t.length() == 3);
  CHECK(t.dimension() == 4);
  CHECK(t.positions().rows() == std::vector<std::vector<double>>{{0, 1, 2}, {3, 4, 5}, {6, 7, 8}});
  CHECK(t.prefix(2).length() == 2);
  CHECK(t.prefix(1).length() == 2);
  CHECK(t.prefix(10) == t);
}

TEST_CASE("resampling interpolates at uniform normalized time") {
  const auto t = rows({{0, 0, 0}, {2, 4, 0}});
  CHECK(resample(t, 3).rows() == std::vector<std::vector<double>>{{0, 0, 0}, {1, 2, 0}, {2, 4, 0}});
  const auto three = rows({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}});
  const auto r = resample(three, 5);
  CHECK(r.point(1)[0] == doctest::Approx(0.5));
  CHECK(r.point(2)[0] == 1.0);
  CHECK(r.point(3)[1] == doctest::Approx(0.5));
  CHECK(code_of([&] { resample(t, 1); }) == ErrorCode::kBadK);
}

TEST_CASE("resampling keeps endpoints and is the identity at the same length") {
  testdata::Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + rng() % 30;
    const auto t = testdata::random_trajectory(rng, n, 3 + rng() % 4);
    CHECK(resample(t, n) == t);
    const auto r = resample(t, 2 + rng() % 80);
    CHECK(r.rows().front() == t.rows().front());
    CHECK(r.rows().back() == t.rows().back());
  }
}

TEST_CASE("DTW of small hand-worked cases") {
  const auto a = rows({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}});
  const auto b = rows({{0, 0, 0}, {2, 0, 0}});
  // Best paths: (0,0) (1,0) (2,1) or (0,0) (1,1) (2,1), cost 1 over 3 steps.
  const auto al = dtw_alignment(a, b);
  CHECK(al.total_cost == 1.0);
  CHECK(al.path_length == 3);
  CHECK(dtw_distance(a, b) == doctest::Approx(1.0 / 3.0));
  CHECK(dtw_distance(a, a) == 0.0);
  CHECK(dtw_alignment(a, a).path_length == 3);
}

TEST_CASE("DTW prefers the shortest of equal-cost paths") {
  // Repeated points make many zero-cost paths; the diagonal-heavy one is
  // shortest.
  const auto a = rows({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}});
  const auto b = rows({{0, 0, 0}, {0, 0, 0}});
  CHECK(dtw_alignment(a, b).path_length == 3);
  const auto c = rows({{0, 0, 0}, {3, 4, 0}});
  const auto d = rows({{0, 0, 0}, {0, 0, 0}, {3, 4, 0}});
  CHECK(dtw_alignment(c, d).total_cost == 0.0);
  CHECK(dtw_alignment(c, d).path_length == 3);
}

TEST_CASE("DTW ignores non-position dimensions") {
  const auto a = rows({{0, 0, 0, 1}, {1, 1, 1, 0}});
  const auto b = rows({{0, 0, 0, -7}, {1, 1, 1, 9}});
  CHECK(dtw_distance(a, b) == 0.0);
  CHECK(code_of([&] { dtw_distance(a, a.positions()); }) == ErrorCode::kDimensionMismatch);
}

TEST_CASE("DTW matches path enumeration on small random pairs") {
  testdata::Rng rng(29);
  for (int i = 0; i < 200; ++i) {
    const auto a = testdata::random_trajectory(rng, 2 + rng() % 4);
    const auto b = testdata::random_trajectory(rng, 2 + rng() % 4);
    const auto fast = dtw_alignment(a, b);
    const auto slow = oracle::brute_force_dtw(a, b);
    CHECK(fast.path_length == slow.path_length);
    CHECK(fast.total_cost == doctest::Approx(slow.total_cost).epsilon(1e-12));
    CHECK(dtw_distance(a, b) == doctest::Approx(dtw_distance(b, a)).epsilon(1e-12));
  }
}

TEST_CASE("warping path counts are Delannoy numbers") {
  CHECK(oracle::count_warping_paths(1, 1) == 1);
  CHECK(oracle::count_warping_paths(2, 2) == 3);
  CHECK(oracle::count_warping_paths(3, 3) == 13);
  CHECK(oracle::count_warping_paths(6, 6) == 1683);
}

TEST_CASE("pseudo ground truth is the mean of resampled successes") {
  const std::vector<Episode> eps = {
      make_episode("a", "m", 0, true, line_trajectory(5, {0, 0.2, 0})),
      make_episode("b", "m", 0, true, line_trajectory(9, {0, -0.2, 0})),
      make_episode("c", "m", 0, false, line_trajectory(9, {0, 5, 0}))};
  const auto gt = build_pseudo_gt(eps, 11);
  CHECK(gt.length() == 11);
  CHECK(gt.dimension() == 3);
  for (std::size_t i = 0; i < 11; ++i) {
    CHECK(gt.point(i)[0] == doctest::Approx(i / 10.0));
    CHECK(gt.point(i)[1] == doctest::Approx(0.0));
  }
  const std::vector<Episode> failures(eps.begin() + 2, eps.end());
  CHECK(code_of([&] { build_pseudo_gt(failures, 11); }) == ErrorCode::kNoSuccesses);
}

TEST_CASE("percentiles interpolate linearly between order statistics") {
  const std::vector<double> v = {4, 1, 3, 2};
  CHECK(percentile(v, 100) == 4.0);
  CHECK(percentile(v, 50) == doctest::Approx(2.5));
  CHECK(percentile(v, 90) == doctest::Approx(3.7));
  const std::vector<double> one = {0.7};
  CHECK(percentile(one, 90) == 0.7);
  const std::vector<double> none;
  CHECK(code_of([&] { percentile(none, 90); }) == ErrorCode::kEmptyInput);
  CHECK(code_of([&] { percentile(v, 0); }) == ErrorCode::kDegenerateInput);
}

TEST_CASE("fixture distances equal the line offsets") {
  const auto eps = threshold_fixture();
  const auto dist = score_episodes(eps, 50);
  REQUIRE(dist.size() == eps.size());
  std::map<std::string, std::optional<double>> by_id;
  for (const auto& d : dist) by_id[d.episode_id] = d.distance;
  CHECK(*by_id["s1"] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(*by_id["s2"] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(*by_id["f280"] == doctest::Approx(0.28).epsilon(1e-12));
  CHECK(*by_id["f050-long"] == *by_id["f050"]);
  CHECK(*by_id["f300"] == *by_id["s1"]);
  CHECK(*by_id["o-f"] == doctest::Approx(0.05).epsilon(1e-12));
  CHECK_FALSE(by_id["u1"].has_value());
}

TEST_CASE("fixture labels under every threshold rule") {
  const auto eps = threshold_fixture();
  const FailureLabel U = FailureLabel::kUnclassifiable;
  for (TauRule rule : kAllTauRules) {
    const auto& labels = testdata::threshold_fixture_labels(rule);
    CAPTURE(tau_rule_name(rule));
    const auto results = classify_failures(eps, 50, rule);
    CHECK(labels_by_id(results) == labels);
    for (const auto& r : results) {
      CHECK(r.tau_rule == rule);
      CHECK(r.dtw_distance.has_value() == (r.label != U));
      CHECK(r.tau_used.has_value() == (r.label != U));
    }
  }
}

TEST_CASE("thresholds come from the group's own successes") {
  const auto results = classify_failures(threshold_fixture(), 50, TauRule::kP90);
  for (const auto& r : results) {
    if (r.model == "m" && r.task_id == 0) {
      CHECK(*r.tau_used == doctest::Approx(0.24).epsilon(1e-12));
    }
    if (r.model == "other") CHECK(*r.tau_used == 0.0);
  }
}

TEST_CASE("classification does not depend on episode order") {
  auto eps = threshold_fixture();
  const auto reference = classify_failures(eps, 50, TauRule::kP95);
  testdata::Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    std::shuffle(eps.begin(), eps.end(), rng);
    const auto results = classify_failures(eps, 50, TauRule::kP95);
    CHECK(labels_by_id(results) == labels_by_id(reference));
    std::map<std::string, double> a, b;
    for (const auto& r : results) a[r.episode_id] = r.dtw_distance.value_or(-1);
    for (const auto& r : reference) b[r.episode_id] = r.dtw_distance.value_or(-1);
    CHECK(a == b);
  }
}

TEST_CASE("results follow input order and cover only failures") {
  const auto eps = threshold_fixture();
  const auto results = classify_failures(eps, 50, TauRule::kMax);
  std::vector<std::string> expected;
  for (const auto& e : eps) {
    if (!e.success) expected.push_back(e.episode_id);
  }
  std::vector<std::string> got;
  for (const auto& r : results) got.push_back(r.episode_id);
  CHECK(got == expected);
}

TEST_CASE("failure summary counts per task and pooled") {
  const auto eps = threshold_fixture();
  const auto dist = score_episodes(eps, 50);
  const auto results = label_failures(dist, TauRule::kMax);
  const auto rows = summarize_failures(dist, results);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].model == "m");
  CHECK(rows[0].task_id == 0);
  CHECK(rows[0].counts.episodes == 11);
  CHECK(rows[0].counts.successes == 4);
  CHECK(rows[0].counts.near_gt == 6);
  CHECK(rows[0].counts.far_gt == 1);
  CHECK(rows[1].task_id == 1);
  CHECK(rows[1].counts.unclassifiable == 2);
  CHECK(rows[2].model == "other");
  CHECK(rows[2].task_id == 0);
  CHECK(rows[3].model == "m");
  CHECK_FALSE(rows[3].task_id.has_value());
  CHECK(rows[3].counts.episodes == 13);
  CHECK(rows[3].counts.failures() == 9);
  CHECK(rows[4].model == "other");
  CHECK(rows[4].counts.far_gt == 1);
}

TEST_CASE("labels partition failures and Far-GT grows as tau tightens") {
  testdata::Rng rng(37);
  for (int group = 0; group < 60; ++group) {
    std::vector<Episode> eps;
    const int n = testdata::uniform_int(rng, 2, 25);
    for (int i = 0; i < n; ++i) {
      const bool success = i == 0 || rng() % 2;
      eps.push_back(make_episode("e" + std::to_string(i), "m", 0, success,
                                 testdata::random_trajectory(rng, 2 + rng() % 20)));
    }
    std::size_t failures = 0;
    for (const auto& e : eps) failures += !e.success;
    std::size_t previous_far = 0;
    for (TauRule rule : kAllTauRules) {
      const auto results = classify_failures(eps, 20, rule);
      CHECK(results.size() == failures);
      std::size_t far = 0;
      for (const auto& r : results) {
        CHECK(r.label != FailureLabel::kUnclassifiable);
        far += r.label == FailureLabel::kFarGT;
      }
      CHECK(far >= previous_far);
      previous_far = far;
    }
  }
}

TEST_CASE("classification input errors") {
  const std::vector<Episode> none;
  CHECK(code_of([&] { score_episodes(none, 50); }) == ErrorCode::kEmptyInput);
  const auto eps = threshold_fixture();
  CHECK(code_of([&] { score_episodes(eps, 1); }) == ErrorCode::kBadK);
}

TEST_CASE("tau rule names") {
  CHECK(tau_rule_name(TauRule::kP95) == "p95");
  CHECK(parse_tau_rule("p90") == TauRule::kP90);
  CHECK_FALSE(parse_tau_rule("p50").has_value());
  CHECK(tau_rule_percent(TauRule::kMax) == 100.0);
  CHECK(failure_label_name(FailureLabel::kFarGT) == "far_gt");
}

}  // namespace
}  // namespace pride
