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

#include "pride/pipeline.h"

#include "doctest.h"
#include "pride/error.h"
#include "support/generators.h"

namespace pride {
namespace {

using testdata::fixture;

std::vector<Diagnostic> diagnostics_of(auto&& fn) {
  try {
    fn();
  } catch (const ReadError& e) {
    return e.diagnostics();
  }
  FAIL("expected a ReadError");
  return {};
}

TEST_CASE("fixture pairs score end to end") {
  const auto manifest = read_manifest(fixture("manifest.jsonl"));
  const auto parses = read_parses(fixture("parses.conllu"));
  const auto table = read_embeddings(fixture("embeddings.jsonl"));
  const auto pairs = build_pairs(manifest, parses);
  REQUIRE(pairs.size() == 3);
  CHECK(pairs[0].original.text == "put the cream cheese in the bowl");
  CHECK(pairs[0].paraphrase.tokens.size() == 8);

  const auto d = score_pairs(pairs, table, 0.5);
  REQUIRE(d.size() == 3);
  CHECK(d[0].pair_id == "p1");
  // Every original content word reappears in the paraphrase.
  CHECK(d[0].s_k == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(d[0].s_t == doctest::Approx(14.0 / 15.0));
  CHECK(d[0].pd == doctest::Approx(0.5 * (1.0 / 15.0)).epsilon(1e-6));
  // Lexical substitutions keep the tree shape.
  CHECK(d[1].s_t == 1.0);
  CHECK(d[1].s_k < 1.0);
  CHECK(d[2].s_t == 1.0);
  for (const auto& row : d) {
    CHECK(row.pd == paraphrase_distance(row.s_k, row.s_t, 0.5));
    CHECK(row.alpha == 0.5);
  }
}

TEST_CASE("missing parses are all reported with their sentence ids") {
  auto manifest = read_manifest(fixture("manifest.jsonl"));
  manifest[1].paraphrase_text = "put the cheese spread in the pot";
  manifest[2].original_text = "turn on the oven";
  const auto parses = read_parses(fixture("parses.conllu"));
  const auto d = diagnostics_of([&] { build_pairs(manifest, parses); });
  REQUIRE(d.size() == 2);
  CHECK(d[0].detail.find(sentence_id("put the cheese spread in the pot")) !=
        std::string::npos);
  CHECK(d[1].detail.find(sentence_id("turn on the oven")) != std::string::npos);
}

TEST_CASE("unscorable pairs are all reported") {
  const auto manifest = read_manifest(fixture("manifest.jsonl"));
  const auto parses = read_parses(fixture("parses.conllu"));
  const auto pairs = build_pairs(manifest, parses);
  const EmbeddingTable empty(8);
  const auto d = diagnostics_of([&] { score_pairs(pairs, empty, 0.5); });
  CHECK(d.size() == 3);
  for (const auto& diag : d) CHECK(diag.code == ErrorCode::kMissingEmbedding);
}

TEST_CASE("joining reports orphans on both sides") {
  const auto manifest = read_manifest(fixture("manifest.jsonl"));
  std::vector<PairDistance> distances = {make_pair_distance("p1", 0.9, 0.9),
                                         make_pair_distance("p2", 0.8, 0.9),
                                         make_pair_distance("ghost", 0.5, 0.5)};
  std::vector<Episode> episodes = read_episodes(fixture("episodes.jsonl"));
  // p3 has no distance row; "ghost" has no manifest record.
  const auto d = diagnostics_of([&] { join_episodes(manifest, distances, episodes); });
  std::size_t ghost = 0, missing = 0;
  for (const auto& diag : d) {
    CHECK(diag.code == ErrorCode::kOrphanRecord);
    ghost += diag.detail.find("ghost") != std::string::npos;
    missing += diag.detail.find("p3") != std::string::npos;
  }
  CHECK(ghost == 1);
  CHECK(missing >= 1);

  distances.pop_back();
  distances.push_back(make_pair_distance("p3", 0.7, 1.0));
  const auto joined = join_episodes(manifest, distances, episodes);
  REQUIRE(joined.size() == episodes.size());
  CHECK(joined[0].score.episode_id == episodes[0].episode_id);
  CHECK(joined[0].object_var == ObjectVariation::kNone);
  CHECK(joined[0].action_var == ActionVariation::kAddition);
  CHECK(joined[0].score.pd == distances[0].pd);
  CHECK(joined[0].score.pride == (episodes[0].success ? distances[0].pd : 0.0));
}

}  // namespace
}  // namespace pride
