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

// Keyword similarity: mean best-match cosine from the original's content
// words into the paraphrase's content words.

#ifndef PRIDE_KEYWORD_SIMILARITY_H_
#define PRIDE_KEYWORD_SIMILARITY_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pride/instruction.h"

namespace pride {

// Per-occurrence word vectors keyed by (sentence id, 1-based token index).
class EmbeddingTable {
 public:
  using Key = std::pair<std::string, int>;

  explicit EmbeddingTable(std::size_t dimension);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return entries_.size(); }

  // Throws kDimensionMismatch, kZeroVector or kDuplicateKey.
  void add(const std::string& sentence, int token, std::vector<float> vector);

  // nullptr when absent.
  const std::vector<float>* find(const std::string& sentence, int token) const;

  // Entries in key order.
  const std::map<Key, std::vector<float>>& entries() const { return entries_; }

 private:
  std::size_t dimension_;
  std::map<Key, std::vector<float>> entries_;
};

// u.v / (|u||v|), clamped to [-1, 1] against rounding.
// Throws kDimensionMismatch (including empty inputs) or kZeroVector.
double cosine(std::span<const float> u, std::span<const float> v);
double cosine(std::span<const double> u, std::span<const double> v);

// Returns a copy of instr with every token that has a table entry carrying
// that vector.
Instruction attach_embeddings(const Instruction& instr,
                              const EmbeddingTable& table);

// (1/n) sum_i max_j cos(e(o_i), e(p_j)). Vectors come from the table, or
// from the token itself when the table has no entry. Not symmetrized and not
// clamped. Throws kEmptyContentSet or kMissingEmbedding.
double keyword_similarity(const Instruction& original,
                          const Instruction& paraphrase,
                          const EmbeddingTable& table);

// Same, using only the vectors carried on the tokens.
double keyword_similarity(const Instruction& original,
                          const Instruction& paraphrase);

}  // namespace pride

#endif  // PRIDE_KEYWORD_SIMILARITY_H_
