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

// Interchange formats.
//
//   manifest    JSON lines: header {"format_version":1,"kind":"manifest"},
//               then one {"pair_id","task_id","original_text",
//               "paraphrase_text","object_var","action_var"} per pair.
//   parses      CoNLL-U, first line "# format_version = 1"; every sentence
//               carries "# sent_id = <sentence_id(text)>".
//   embeddings  JSON lines: header {"format_version":1,"kind":"embeddings"},
//               then {"sent_id","token","vector"} per content token.
//   episodes    JSON lines: header {"format_version":1,"kind":"episodes"},
//               then {"episode_id","model"?,"task_id","pair_id","seed",
//               "success","trajectory":[[x,y,z,...],...]}.
//   pair distances  RFC-4180 CSV: pair_id,s_k,s_t,pd,alpha.
//
// Readers collect every per-line problem and throw one ReadError; they never
// return a partial result and never reorder records.

#ifndef PRIDE_IO_H_
#define PRIDE_IO_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pride/instruction.h"
#include "pride/keyword_similarity.h"
#include "pride/pride_metric.h"
#include "pride/trajectory.h"

namespace pride {

inline constexpr int kFormatVersion = 1;

struct ManifestRecord {
  std::string pair_id;
  int task_id = 0;
  std::string original_text;
  std::string paraphrase_text;
  ObjectVariation object_var = ObjectVariation::kNone;
  ActionVariation action_var = ActionVariation::kNone;

  friend bool operator==(const ManifestRecord&, const ManifestRecord&) = default;
};

struct ManifestReadOptions {
  // Validation wants to see duplicates rather than fail on them.
  bool reject_duplicate_ids = true;
};

std::vector<ManifestRecord> parse_manifest(std::istream& in, const std::string& source,
                                           const ManifestReadOptions& options = {});
std::vector<ManifestRecord> read_manifest(const std::string& path,
                                          const ManifestReadOptions& options = {});
void write_manifest(std::ostream& out, const std::vector<ManifestRecord>& records);

std::vector<Instruction> parse_parses(std::istream& in, const std::string& source);
std::vector<Instruction> read_parses(const std::string& path);
void write_parses(std::ostream& out, const std::vector<Instruction>& sentences);

// Lookup by sentence id; pointers into `sentences`.
std::unordered_map<std::string, const Instruction*> index_by_id(
    const std::vector<Instruction>& sentences);

EmbeddingTable parse_embeddings(std::istream& in, const std::string& source);
EmbeddingTable read_embeddings(const std::string& path);
// Components use 9 significant digits, which reproduces every float exactly.
void write_embeddings(std::ostream& out, const EmbeddingTable& table,
                      std::string_view model_id = {});

std::vector<Episode> parse_episodes(std::istream& in, const std::string& source);
std::vector<Episode> read_episodes(const std::string& path);
void write_episodes(std::ostream& out, const std::vector<Episode>& episodes);

std::vector<PairDistance> parse_pair_distances(std::istream& in, const std::string& source);
std::vector<PairDistance> read_pair_distances(const std::string& path);
void write_pair_distances(std::ostream& out, const std::vector<PairDistance>& rows);

// CSV helpers.
std::string csv_field(std::string_view value);
std::string csv_row(const std::vector<std::string>& fields);
// Splits one record; throws Error(kMalformedLine) on unbalanced quotes.
std::vector<std::string> split_csv_record(std::string_view line);

// Fixed-point rendering with `decimals` places; "" for absent values.
std::string format_fixed(double value, int decimals);
std::string format_fixed(const std::optional<double>& value, int decimals);
// Shortest text that parses back to the same double.
std::string format_exact(double value);

}  // namespace pride

#endif  // PRIDE_IO_H_
