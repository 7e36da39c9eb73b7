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

// Instructions, their token-level parses, and the two-axis paraphrase
// taxonomy used to tag every benchmark pair.

#ifndef PRIDE_INSTRUCTION_H_
#define PRIDE_INSTRUCTION_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pride {

// The 17 universal POS tags.
enum class Upos {
  kAdj, kAdp, kAdv, kAux, kCconj, kDet, kIntj, kNoun, kNum,
  kPart, kPron, kPropn, kPunct, kSconj, kSym, kVerb, kX,
};

inline constexpr std::size_t kUposCount = 17;

std::string_view upos_name(Upos pos);
std::optional<Upos> parse_upos(std::string_view name);

// Open-class tags kept by content-word extraction.
bool is_content_pos(Upos pos);

struct Token {
  int index = 0;  // 1-based
  std::string surface;
  std::string lemma;
  Upos pos = Upos::kX;
  int head = 0;  // 0 = root
  std::string deprel;
  std::optional<std::vector<float>> embedding;

  // CoNLL-U columns not consumed by the metrics; carried for round-trips.
  std::string xpos = "_";
  std::string feats = "_";
  std::string deps = "_";
  std::string misc = "_";
};

struct Instruction {
  std::string id;
  std::string text;
  std::vector<Token> tokens;
};

// Returns a description of the first violated tree invariant (contiguous
// 1..n indices, single root, no self-heads, acyclic, heads in range), or
// nullopt when the tokens form a well-formed dependency tree.
std::optional<std::string> find_tree_violation(const std::vector<Token>& tokens);

// Tokens whose POS is open-class, in sentence order. Duplicates are kept.
// Throws Error(kEmptyContentSet) when nothing qualifies.
std::vector<Token> extract_content_words(const Instruction& instr);

// Stable sentence identifier for a text: lowercase hex FNV-1a 64 over the
// exact UTF-8 bytes. Manifest texts and parse-file sent_ids meet here.
std::string sentence_id(std::string_view text);

enum class ObjectVariation { kNone, kAddition, kSPContextual, kSPHabitual };

enum class ActionVariation {
  kNone,
  kAddition,
  kSPContextual,
  kSPHabitual,
  kCoordination,
  kSubordination,
  kNeedStatement,
  kEmbeddedImperative,
  kPermissionDirective,
  kQuestionDirective,
  kHint,
};

inline constexpr std::size_t kObjectVariationCount = 4;
inline constexpr std::size_t kActionVariationCount = 11;

inline constexpr std::array<ObjectVariation, kObjectVariationCount>
    kAllObjectVariations = {ObjectVariation::kNone, ObjectVariation::kAddition,
                            ObjectVariation::kSPContextual,
                            ObjectVariation::kSPHabitual};

inline constexpr std::array<ActionVariation, kActionVariationCount>
    kAllActionVariations = {
        ActionVariation::kNone,
        ActionVariation::kAddition,
        ActionVariation::kSPContextual,
        ActionVariation::kSPHabitual,
        ActionVariation::kCoordination,
        ActionVariation::kSubordination,
        ActionVariation::kNeedStatement,
        ActionVariation::kEmbeddedImperative,
        ActionVariation::kPermissionDirective,
        ActionVariation::kQuestionDirective,
        ActionVariation::kHint,
};

// Machine tags as they appear in manifests ("sp_contextual", "hint", ...).
std::string_view object_tag(ObjectVariation v);
std::string_view action_tag(ActionVariation v);
std::optional<ObjectVariation> parse_object_tag(std::string_view tag);
std::optional<ActionVariation> parse_action_tag(std::string_view tag);

// Short column/row headers used in report tables ("ctx", "quest", ...).
std::string_view object_label(ObjectVariation v);
std::string_view action_label(ActionVariation v);

inline std::size_t ordinal(ObjectVariation v) { return static_cast<std::size_t>(v); }
inline std::size_t ordinal(ActionVariation v) { return static_cast<std::size_t>(v); }

// Every combination except (None, None) is a legal paraphrase type.
inline bool is_legal_combination(ObjectVariation o, ActionVariation a) {
  return !(o == ObjectVariation::kNone && a == ActionVariation::kNone);
}

std::vector<std::pair<ObjectVariation, ActionVariation>> legal_combinations();

struct ParaphrasePair {
  std::string pair_id;
  int task_id = 0;
  Instruction original;
  Instruction paraphrase;
  ObjectVariation object_var = ObjectVariation::kNone;
  ActionVariation action_var = ActionVariation::kNone;
};

}  // namespace pride

#endif  // PRIDE_INSTRUCTION_H_
