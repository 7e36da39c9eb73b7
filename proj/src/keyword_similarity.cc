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

#include "pride/keyword_similarity.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pride/error.h"
#include "pride/numeric.h"

namespace pride {

EmbeddingTable::EmbeddingTable(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "embedding dimension must be positive");
  }
}

void EmbeddingTable::add(const std::string& sentence, int token,
                         std::vector<float> vector) {
  if (vector.size() != dimension_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vector for (" + sentence + ", " + std::to_string(token) +
                    ") has dimension " + std::to_string(vector.size()) +
                    ", table has " + std::to_string(dimension_));
  }
  if (std::all_of(vector.begin(), vector.end(), [](float x) { return x == 0.0f; })) {
    throw Error(ErrorCode::kZeroVector, "all-zero vector for (" + sentence +
                                            ", " + std::to_string(token) + ")");
  }
  auto [it, inserted] = entries_.try_emplace(Key{sentence, token}, std::move(vector));
  if (!inserted) {
    throw Error(ErrorCode::kDuplicateKey, "duplicate vector for (" + sentence +
                                              ", " + std::to_string(token) + ")");
  }
}

const std::vector<float>* EmbeddingTable::find(const std::string& sentence,
                                               int token) const {
  auto it = entries_.find(Key{sentence, token});
  return it == entries_.end() ? nullptr : &it->second;
}

namespace {

template <typename T>
double cosine_impl(std::span<const T> u, std::span<const T> v) {
  if (u.size() != v.size() || u.empty()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cosine of vectors with dimensions " + std::to_string(u.size()) +
                    " and " + std::to_string(v.size()));
  }
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = u[i];
    const double b = v[i];
    dot += a * b;
    nu += a * a;
    nv += b * b;
  }
  if (nu == 0.0 || nv == 0.0) {
    throw Error(ErrorCode::kZeroVector, "cosine of an all-zero vector");
  }
  // sqrt(nu * nv) is exactly nu when u == v, so self-similarity is exactly 1.
  const double c = dot / std::sqrt(nu * nv);
  return std::clamp(c, -1.0, 1.0);
}

const std::vector<float>& vector_for(const Instruction& instr, const Token& t,
                                     const EmbeddingTable* table) {
  if (table != nullptr) {
    if (const auto* v = table->find(instr.id, t.index)) return *v;
  }
  if (t.embedding) return *t.embedding;
  throw Error(ErrorCode::kMissingEmbedding,
              "no embedding for token " + std::to_string(t.index) + " ('" +
                  t.surface + "') of sentence '" + instr.id + "'");
}

double keyword_similarity_impl(const Instruction& original,
                               const Instruction& paraphrase,
                               const EmbeddingTable* table) {
  const std::vector<Token> ow = extract_content_words(original);
  const std::vector<Token> pw = extract_content_words(paraphrase);

  std::vector<const std::vector<float>*> pv;
  pv.reserve(pw.size());
  for (const Token& t : pw) pv.push_back(&vector_for(paraphrase, t, table));

  CompensatedSum total;
  for (const Token& o : ow) {
    const std::vector<float>& ov = vector_for(original, o, table);
    double best = -std::numeric_limits<double>::infinity();
    for (const auto* p : pv) best = std::max(best, cosine(ov, *p));
    total.add(best);
  }
  return total.value() / static_cast<double>(ow.size());
}

}  // namespace

double cosine(std::span<const float> u, std::span<const float> v) {
  return cosine_impl(u, v);
}

double cosine(std::span<const double> u, std::span<const double> v) {
  return cosine_impl(u, v);
}

Instruction attach_embeddings(const Instruction& instr,
                              const EmbeddingTable& table) {
  Instruction out = instr;
  for (Token& t : out.tokens) {
    if (const auto* v = table.find(instr.id, t.index)) t.embedding = *v;
  }
  return out;
}

double keyword_similarity(const Instruction& original,
                          const Instruction& paraphrase,
                          const EmbeddingTable& table) {
  return keyword_similarity_impl(original, paraphrase, &table);
}

double keyword_similarity(const Instruction& original,
                          const Instruction& paraphrase) {
  return keyword_similarity_impl(original, paraphrase, nullptr);
}

}  // namespace pride
