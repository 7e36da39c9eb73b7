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

// Joins the interchange inputs into scored pairs and scored episodes.

#ifndef PRIDE_PIPELINE_H_
#define PRIDE_PIPELINE_H_

#include <span>
#include <vector>

#include "pride/instruction.h"
#include "pride/io.h"
#include "pride/keyword_similarity.h"
#include "pride/pride_metric.h"
#include "pride/stats.h"
#include "pride/trajectory.h"

namespace pride {

// Attaches parses to manifest records by sentence_id(text). Throws a
// ReadError listing every sentence without a parse.
std::vector<ParaphrasePair> build_pairs(std::span<const ManifestRecord> manifest,
                                        const std::vector<Instruction>& parses);

// S_K, S_T and PD for every pair, in input order. Throws a ReadError listing
// every pair that cannot be scored (no content words, missing vectors).
std::vector<PairDistance> score_pairs(std::span<const ParaphrasePair> pairs,
                                      const EmbeddingTable& table, double alpha);

// Joins episodes to their pair's distance and variation tags. Throws a
// ReadError with one kOrphanRecord diagnostic per unmatched id: episodes
// whose pair is unknown, and distance rows absent from the manifest.
std::vector<ScoredEpisode> join_episodes(std::span<const ManifestRecord> manifest,
                                         std::span<const PairDistance> distances,
                                         std::span<const Episode> episodes);

}  // namespace pride

#endif  // PRIDE_PIPELINE_H_
