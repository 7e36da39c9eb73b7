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

#include "pride/dependency_tree.h"

#include <algorithm>
#include <optional>

#include "pride/error.h"

namespace pride {

DependencyTree DependencyTree::from_parents(std::vector<NodeLabel> labels,
                                            const std::vector<int>& parents) {
  const std::size_t n = labels.size();
  if (n == 0) throw Error(ErrorCode::kMalformedParse, "tree has no nodes");
  if (parents.size() != n) {
    throw Error(ErrorCode::kMalformedParse,
                "label and parent counts differ");
  }
  DependencyTree tree;
  tree.children_.resize(n);
  std::optional<std::size_t> root;
  for (std::size_t i = 0; i < n; ++i) {
    const int p = parents[i];
    if (p == -1) {
      if (root) throw Error(ErrorCode::kMalformedParse, "multiple roots");
      root = i;
    } else if (p < 0 || static_cast<std::size_t>(p) >= n ||
               static_cast<std::size_t>(p) == i) {
      throw Error(ErrorCode::kMalformedParse,
                  "node " + std::to_string(i) + " has invalid parent " +
                      std::to_string(p));
    } else {
      tree.children_[p].push_back(i);
    }
  }
  if (!root) throw Error(ErrorCode::kMalformedParse, "no root (head cycle)");
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t cur = i;
    std::size_t steps = 0;
    while (parents[cur] != -1) {
      cur = static_cast<std::size_t>(parents[cur]);
      if (++steps > n) throw Error(ErrorCode::kMalformedParse, "head cycle");
    }
  }
  tree.labels_ = std::move(labels);
  tree.parents_ = parents;
  tree.root_ = *root;
  return tree;
}

std::vector<std::size_t> DependencyTree::postorder() const {
  std::vector<std::size_t> order;
  order.reserve(size());
  // Iterative DFS: (node, next child position).
  std::vector<std::pair<std::size_t, std::size_t>> stack{{root_, 0}};
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < children_[node].size()) {
      const std::size_t child = children_[node][next++];
      stack.emplace_back(child, 0);
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }
  return order;
}

DependencyTree build_dependency_tree(const Instruction& instr) {
  if (auto problem = find_tree_violation(instr.tokens)) {
    throw Error(ErrorCode::kMalformedParse,
                "instruction '" + instr.id + "': " + *problem);
  }
  std::vector<NodeLabel> labels;
  std::vector<int> parents;
  labels.reserve(instr.tokens.size());
  parents.reserve(instr.tokens.size());
  for (const Token& t : instr.tokens) {
    labels.push_back(NodeLabel{t.pos, t.deprel});
    parents.push_back(t.head - 1);
  }
  return DependencyTree::from_parents(std::move(labels), parents);
}

namespace {

// Postorder view used by Zhang-Shasha; positions are 1-based.
struct PostorderTree {
  std::vector<const NodeLabel*> label;  // label[i] for postorder i
  std::vector<std::size_t> leftmost;    // leftmost leaf descendant of i
  std::vector<std::size_t> keyroots;    // ascending
};

PostorderTree index_postorder(const DependencyTree& tree) {
  const std::vector<std::size_t> order = tree.postorder();
  const std::size_t n = order.size();
  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < n; ++i) position[order[i]] = i + 1;

  PostorderTree out;
  out.label.assign(n + 1, nullptr);
  out.leftmost.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t node = order[i];
    out.label[i + 1] = &tree.label(node);
    const auto& kids = tree.children(node);
    // Children precede their parent in postorder, so the first child's
    // leftmost leaf is already known.
    out.leftmost[i + 1] = kids.empty() ? i + 1 : out.leftmost[position[kids.front()]];
  }
  // A keyroot is the highest-numbered node for each distinct leftmost leaf.
  std::vector<bool> seen(n + 1, false);
  for (std::size_t i = n; i >= 1; --i) {
    if (!seen[out.leftmost[i]]) {
      seen[out.leftmost[i]] = true;
      out.keyroots.push_back(i);
    }
  }
  std::reverse(out.keyroots.begin(), out.keyroots.end());
  return out;
}

}  // namespace

int tree_edit_distance(const DependencyTree& a, const DependencyTree& b) {
  const PostorderTree ta = index_postorder(a);
  const PostorderTree tb = index_postorder(b);
  const std::size_t n = a.size();
  const std::size_t m = b.size();

  std::vector<std::vector<int>> td(n + 1, std::vector<int>(m + 1, 0));
  std::vector<std::vector<int>> fd(n + 2, std::vector<int>(m + 2, 0));

  for (std::size_t i : ta.keyroots) {
    for (std::size_t j : tb.keyroots) {
      const std::size_t li = ta.leftmost[i];
      const std::size_t lj = tb.leftmost[j];
      // fd[x][y]: forest distance between postorder ranges [li, li+x-1]
      // and [lj, lj+y-1].
      fd[0][0] = 0;
      for (std::size_t x = 1; x <= i - li + 1; ++x) fd[x][0] = fd[x - 1][0] + 1;
      for (std::size_t y = 1; y <= j - lj + 1; ++y) fd[0][y] = fd[0][y - 1] + 1;
      for (std::size_t x = 1; x <= i - li + 1; ++x) {
        const std::size_t i1 = li + x - 1;
        for (std::size_t y = 1; y <= j - lj + 1; ++y) {
          const std::size_t j1 = lj + y - 1;
          const int del = fd[x - 1][y] + 1;
          const int ins = fd[x][y - 1] + 1;
          if (ta.leftmost[i1] == li && tb.leftmost[j1] == lj) {
            const int rel = fd[x - 1][y - 1] +
                            (*ta.label[i1] == *tb.label[j1] ? 0 : 1);
            fd[x][y] = std::min({del, ins, rel});
            td[i1][j1] = fd[x][y];
          } else {
            const std::size_t px = ta.leftmost[i1] - li;
            const std::size_t py = tb.leftmost[j1] - lj;
            fd[x][y] = std::min({del, ins, fd[px][py] + td[i1][j1]});
          }
        }
      }
    }
  }
  return td[n][m];
}

double structural_similarity(const DependencyTree& a, const DependencyTree& b) {
  const double ted = tree_edit_distance(a, b);
  return 1.0 - ted / static_cast<double>(a.size() + b.size());
}

}  // namespace pride
