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

#include "pride/instruction.h"

#include <cstdint>
#include <cstdio>

#include "pride/error.h"

namespace pride {

namespace {

constexpr std::array<std::string_view, kUposCount> kUposNames = {
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
};

constexpr std::array<std::string_view, kObjectVariationCount> kObjectTags = {
    "none", "addition", "sp_contextual", "sp_habitual"};
constexpr std::array<std::string_view, kObjectVariationCount> kObjectLabels = {
    "None", "Addition", "Contextual", "Habitual"};

constexpr std::array<std::string_view, kActionVariationCount> kActionTags = {
    "none",           "addition",
    "sp_contextual",  "sp_habitual",
    "coordination",   "subordination",
    "need_statement", "embedded_imperative",
    "permission_directive", "question_directive",
    "hint"};
constexpr std::array<std::string_view, kActionVariationCount> kActionLabels = {
    "None", "add", "ctx", "hab", "coord", "subord",
    "need", "embed", "perm", "quest", "hint"};

}  // namespace

std::string_view upos_name(Upos pos) {
  return kUposNames[static_cast<std::size_t>(pos)];
}

std::optional<Upos> parse_upos(std::string_view name) {
  for (std::size_t i = 0; i < kUposNames.size(); ++i) {
    if (kUposNames[i] == name) return static_cast<Upos>(i);
  }
  return std::nullopt;
}

bool is_content_pos(Upos pos) {
  switch (pos) {
    case Upos::kNoun:
    case Upos::kPropn:
    case Upos::kVerb:
    case Upos::kAdj:
    case Upos::kAdv:
    case Upos::kNum:
      return true;
    default:
      return false;
  }
}

std::optional<std::string> find_tree_violation(const std::vector<Token>& tokens) {
  const int n = static_cast<int>(tokens.size());
  if (n == 0) return "sentence has no tokens";
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const Token& t = tokens[i];
    if (t.index != i + 1) {
      return "token indices are not contiguous 1.." + std::to_string(n) +
             " (position " + std::to_string(i + 1) + " has index " +
             std::to_string(t.index) + ")";
    }
    if (t.head < 0 || t.head > n) {
      return "token " + std::to_string(t.index) + " has out-of-range head " +
             std::to_string(t.head);
    }
    if (t.head == t.index) {
      return "token " + std::to_string(t.index) + " is its own head";
    }
    if (t.head == 0) ++roots;
  }
  if (roots != 1) {
    return "expected exactly one root, found " + std::to_string(roots);
  }
  // Walk up from every token; a walk longer than n means a cycle.
  for (int i = 0; i < n; ++i) {
    int cur = tokens[i].index;
    int steps = 0;
    while (cur != 0) {
      cur = tokens[cur - 1].head;
      if (++steps > n) {
        return "head cycle through token " + std::to_string(tokens[i].index);
      }
    }
  }
  return std::nullopt;
}

std::vector<Token> extract_content_words(const Instruction& instr) {
  std::vector<Token> out;
  for (const Token& t : instr.tokens) {
    if (is_content_pos(t.pos)) out.push_back(t);
  }
  if (out.empty()) {
    throw Error(ErrorCode::kEmptyContentSet,
                "instruction '" + instr.id + "' has no content words");
  }
  return out;
}

std::string sentence_id(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf, 16);
}

std::string_view object_tag(ObjectVariation v) { return kObjectTags[ordinal(v)]; }
std::string_view action_tag(ActionVariation v) { return kActionTags[ordinal(v)]; }
std::string_view object_label(ObjectVariation v) { return kObjectLabels[ordinal(v)]; }
std::string_view action_label(ActionVariation v) { return kActionLabels[ordinal(v)]; }

std::optional<ObjectVariation> parse_object_tag(std::string_view tag) {
  for (std::size_t i = 0; i < kObjectTags.size(); ++i) {
    if (kObjectTags[i] == tag) return static_cast<ObjectVariation>(i);
  }
  return std::nullopt;
}

std::optional<ActionVariation> parse_action_tag(std::string_view tag) {
  for (std::size_t i = 0; i < kActionTags.size(); ++i) {
    if (kActionTags[i] == tag) return static_cast<ActionVariation>(i);
  }
  return std::nullopt;
}

std::vector<std::pair<ObjectVariation, ActionVariation>> legal_combinations() {
  std::vector<std::pair<ObjectVariation, ActionVariation>> out;
  for (ObjectVariation o : kAllObjectVariations) {
    for (ActionVariation a : kAllActionVariations) {
      if (is_legal_combination(o, a)) out.emplace_back(o, a);
    }
  }
  return out;
}

}  // namespace pride
