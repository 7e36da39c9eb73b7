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

#include <set>
#include <string>
#include <unordered_map>

#include "pride/dependency_tree.h"
#include "pride/error.h"

namespace pride {

std::vector<ParaphrasePair> build_pairs(std::span<const ManifestRecord> manifest,
                                        const std::vector<Instruction>& parses) {
  const auto index = index_by_id(parses);
  std::vector<Diagnostic> diags;
  std::set<std::string> reported;
  auto lookup = [&](const std::string& text) -> const Instruction* {
    const std::string id = sentence_id(text);
    auto it = index.find(id);
    if (it != index.end()) return it->second;
    if (reported.insert(id).second) {
      diags.push_back({ErrorCode::kMissingSentId, 0,
                       "no parse for sentence " + id + " (\"" + text + "\")"});
    }
    return nullptr;
  };

  std::vector<ParaphrasePair> pairs;
  pairs.reserve(manifest.size());
  for (const ManifestRecord& r : manifest) {
    const Instruction* o = lookup(r.original_text);
    const Instruction* p = lookup(r.paraphrase_text);
    if (o == nullptr || p == nullptr) continue;
    pairs.push_back({r.pair_id, r.task_id, *o, *p, r.object_var, r.action_var});
  }
  if (!diags.empty()) throw ReadError("parses", std::move(diags));
  return pairs;
}

std::vector<PairDistance> score_pairs(std::span<const ParaphrasePair> pairs,
                                      const EmbeddingTable& table, double alpha) {
  // Reject a bad alpha before any per-pair work.
  paraphrase_distance(1.0, 1.0, alpha);
  std::vector<PairDistance> out;
  out.reserve(pairs.size());
  std::vector<Diagnostic> diags;
  for (const ParaphrasePair& p : pairs) {
    try {
      const double s_k = keyword_similarity(p.original, p.paraphrase, table);
      const double s_t = structural_similarity(build_dependency_tree(p.original),
                                               build_dependency_tree(p.paraphrase));
      out.push_back(make_pair_distance(p.pair_id, s_k, s_t, alpha));
    } catch (const Error& e) {
      diags.push_back({e.code(), 0, "pair '" + p.pair_id + "': " + e.what()});
    }
  }
  if (!diags.empty()) throw ReadError("score", std::move(diags));
  return out;
}

std::vector<ScoredEpisode> join_episodes(std::span<const ManifestRecord> manifest,
                                         std::span<const PairDistance> distances,
                                         std::span<const Episode> episodes) {
  std::unordered_map<std::string, const ManifestRecord*> records;
  for (const ManifestRecord& r : manifest) records.emplace(r.pair_id, &r);
  std::unordered_map<std::string, const PairDistance*> by_pair;
  for (const PairDistance& d : distances) by_pair.emplace(d.pair_id, &d);

  std::vector<Diagnostic> diags;
  for (const PairDistance& d : distances) {
    if (!records.contains(d.pair_id)) {
      diags.push_back({ErrorCode::kOrphanRecord, 0,
                       "pair distance '" + d.pair_id + "' is not in the manifest"});
    }
  }
  std::vector<ScoredEpisode> out;
  out.reserve(episodes.size());
  for (const Episode& e : episodes) {
    auto rec = records.find(e.pair_id);
    auto dist = by_pair.find(e.pair_id);
    if (rec == records.end() || dist == by_pair.end()) {
      diags.push_back({ErrorCode::kOrphanRecord, 0,
                       "episode '" + e.episode_id + "' references pair '" + e.pair_id +
                           "' missing from the " +
                           (rec == records.end() ? "manifest" : "pair distances")});
      continue;
    }
    out.push_back({make_episode_score(e.episode_id, e.model, *dist->second, e.success),
                   rec->second->object_var, rec->second->action_var});
  }
  if (!diags.empty()) throw ReadError("join", std::move(diags));
  return out;
}

}  // namespace pride
