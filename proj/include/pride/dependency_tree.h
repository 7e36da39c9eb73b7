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

// Ordered labeled dependency trees and the structural similarity built on
// their tree edit distance.

#ifndef PRIDE_DEPENDENCY_TREE_H_
#define PRIDE_DEPENDENCY_TREE_H_

#include <cstddef>
#include <string>
#include <vector>

#include "pride/instruction.h"

namespace pride {

// Composite node label: a substitution costs 1 iff either part differs.
struct NodeLabel {
  Upos pos = Upos::kX;
  std::string deprel;

  friend bool operator==(const NodeLabel&, const NodeLabel&) = default;
};

class DependencyTree {
 public:
  // parents[i] is the index of node i's parent, or -1 for the root.
  // Children are ordered by node index. Throws Error(kMalformedParse) unless
  // the parent links form a single rooted tree.
  static DependencyTree from_parents(std::vector<NodeLabel> labels,
                                     const std::vector<int>& parents);

  std::size_t size() const { return labels_.size(); }
  std::size_t root() const { return root_; }
  const NodeLabel& label(std::size_t node) const { return labels_[node]; }
  int parent(std::size_t node) const { return parents_[node]; }
  const std::vector<std::size_t>& children(std::size_t node) const {
    return children_[node];
  }

  // Nodes in left-to-right postorder.
  std::vector<std::size_t> postorder() const;

 private:
  DependencyTree() = default;

  std::vector<NodeLabel> labels_;
  std::vector<int> parents_;
  std::vector<std::vector<std::size_t>> children_;
  std::size_t root_ = 0;
};

// One node per token labeled (UPOS, deprel); node i is token i+1.
DependencyTree build_dependency_tree(const Instruction& instr);

// Unit-cost ordered tree edit distance (Zhang-Shasha).
int tree_edit_distance(const DependencyTree& a, const DependencyTree& b);

// 1 - TED / (|a| + |b|), in [0, 1].
double structural_similarity(const DependencyTree& a, const DependencyTree& b);

}  // namespace pride

#endif  // PRIDE_DEPENDENCY_TREE_H_
