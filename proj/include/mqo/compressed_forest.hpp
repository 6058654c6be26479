// Copyright 2026 The Authors.
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

#ifndef MQO_COMPRESSED_FOREST_HPP_
#define MQO_COMPRESSED_FOREST_HPP_

#include <algorithm>
#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mqo/error.hpp"
#include "mqo/forest.hpp"

namespace mqo {

/// The selected candidates of a forest connected by lowest-selected-ancestor
/// edges: parent -> child exists iff parent is an ancestor of child and no
/// other selected node lies between them. Edge lists are kept sorted.
///
/// Single writer. The ancestor table is shared and never mutated.
class CompressedForest {
 public:
  CompressedForest() = default;

  explicit CompressedForest(std::shared_ptr<const AncestorTable> table)
      : table_(std::move(table)),
        selected_(table_->size(), 0),
        parents_(table_->size()),
        children_(table_->size()) {}

  bool contains(NodeId c) const { return c < selected_.size() && selected_[c]; }

  std::vector<NodeId> selected() const {
    std::vector<NodeId> out;
    for (NodeId i = 0; i < selected_.size(); ++i)
      if (selected_[i]) out.push_back(i);
    return out;
  }

  std::size_t selected_count() const { return count_; }
  const std::vector<NodeId>& parents(NodeId c) const { return parents_[c]; }
  const std::vector<NodeId>& children(NodeId c) const { return children_[c]; }

  /// All parent -> child edges, sorted.
  std::vector<std::pair<NodeId, NodeId>> edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId p = 0; p < children_.size(); ++p)
      for (NodeId c : children_[p]) out.emplace_back(p, c);
    return out;
  }

  const AncestorTable& table() const { return *table_; }

  /// Nodes examined by the most recent add/remove call.
  std::size_t last_touched() const { return last_touched_; }

  /// Inserts c, re-linking only the nodes whose lowest selected ancestor
  /// changes. One scan over the selected set plus the edge lists of the
  /// affected nodes.
  void add(NodeId c) {
    check_range(c);
    if (selected_[c])
      throw InvalidArgumentError("candidate " + std::to_string(c) +
                                 " is already selected");
    last_touched_ = 1;
    const AncestorTable& anc = *table_;
    std::vector<NodeId> above;  // selected ancestors of c
    std::vector<NodeId> below;  // selected descendants of c
    for (NodeId s : order_) {
      ++last_touched_;
      if (anc.is_ancestor(s, c))
        above.push_back(s);
      else if (anc.is_ancestor(c, s))
        below.push_back(s);
    }
    // x in `above` is a lowest ancestor iff none of its children lies in
    // `above`; y in `below` is a top descendant iff none of its parents does.
    std::vector<char> in_above(selected_.size(), 0);
    std::vector<char> in_below(selected_.size(), 0);
    for (NodeId x : above) in_above[x] = 1;
    for (NodeId y : below) in_below[y] = 1;

    std::vector<NodeId> new_parents;
    for (NodeId x : above) {
      const auto& ch = children_[x];
      if (std::none_of(ch.begin(), ch.end(), [&](NodeId k) { return in_above[k]; }))
        new_parents.push_back(x);
    }
    std::vector<NodeId> new_children;
    for (NodeId y : below) {
      const auto& ps = parents_[y];
      if (std::none_of(ps.begin(), ps.end(), [&](NodeId k) { return in_below[k]; }))
        new_children.push_back(y);
    }
    for (NodeId y : new_children) {
      // Parents of y above c now reach y through c.
      std::vector<NodeId> stale;
      for (NodeId p : parents_[y])
        if (in_above[p]) stale.push_back(p);
      for (NodeId p : stale) unlink(p, y);
      link(c, y);
    }
    for (NodeId x : new_parents) link(x, c);
    selected_[c] = 1;
    ++count_;
    order_.insert(std::lower_bound(order_.begin(), order_.end(), c), c);
  }

  /// Removes c; each child of c is re-attached to every former parent of c
  /// that is not already above one of the child's remaining parents.
  void remove(NodeId c) {
    check_range(c);
    if (!selected_[c])
      throw InvalidArgumentError("candidate " + std::to_string(c) +
                                 " is not selected");
    last_touched_ = 1;
    const AncestorTable& anc = *table_;
    const std::vector<NodeId> ps = parents_[c];
    const std::vector<NodeId> ks = children_[c];
    for (NodeId p : ps) unlink(p, c);
    for (NodeId k : ks) unlink(c, k);
    for (NodeId k : ks) {
      ++last_touched_;
      for (NodeId p : ps) {
        const auto& kp = parents_[k];
        const bool shadowed = std::any_of(kp.begin(), kp.end(), [&](NodeId q) {
          return anc.is_ancestor(p, q);
        });
        if (!shadowed && !has_edge(p, k)) link(p, k);
      }
    }
    last_touched_ += ps.size();
    selected_[c] = 0;
    --count_;
    order_.erase(std::lower_bound(order_.begin(), order_.end(), c));
  }

 private:
  friend CompressedForest compress(const ExpressionForest&,
                                   const std::vector<NodeId>&,
                                   std::shared_ptr<const AncestorTable>);

  void check_range(NodeId c) const {
    if (c >= selected_.size())
      throw InvalidArgumentError("eq id out of range: " + std::to_string(c));
  }

  static void insert_sorted(std::vector<NodeId>& v, NodeId x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) v.insert(it, x);
  }
  static void erase_sorted(std::vector<NodeId>& v, NodeId x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it != v.end() && *it == x) v.erase(it);
  }
  bool has_edge(NodeId p, NodeId k) const {
    return std::binary_search(children_[p].begin(), children_[p].end(), k);
  }
  void link(NodeId p, NodeId k) {
    insert_sorted(children_[p], k);
    insert_sorted(parents_[k], p);
  }
  void unlink(NodeId p, NodeId k) {
    erase_sorted(children_[p], k);
    erase_sorted(parents_[k], p);
  }

  std::shared_ptr<const AncestorTable> table_;
  std::vector<char> selected_;
  std::vector<NodeId> order_;  // selected ids, ascending
  std::vector<std::vector<NodeId>> parents_;
  std::vector<std::vector<NodeId>> children_;
  std::size_t count_ = 0;
  std::size_t last_touched_ = 0;
};

/// Builds the compressed forest of `selected` from scratch.
inline CompressedForest compress(const ExpressionForest& forest,
                                 const std::vector<NodeId>& selected,
                                 std::shared_ptr<const AncestorTable> table) {
  CompressedForest cf(std::move(table));
  const AncestorTable& anc = cf.table();
  for (NodeId c : selected) {
    if (c >= forest.eq_count() || !forest.eq(c).candidate)
      throw InvalidArgumentError("node " + std::to_string(c) +
                                 " is not a candidate");
    if (cf.selected_[c])
      throw InvalidArgumentError("node " + std::to_string(c) +
                                 " listed twice");
    cf.selected_[c] = 1;
    ++cf.count_;
  }
  cf.order_ = cf.selected();
  for (NodeId child : cf.order_) {
    for (NodeId p : cf.order_) {
      if (!anc.is_ancestor(p, child)) continue;
      bool lowest = true;
      for (NodeId s : cf.order_) {
        if (s != p && s != child && anc.is_ancestor(p, s) &&
            anc.is_ancestor(s, child)) {
          lowest = false;
          break;
        }
      }
      if (lowest) cf.link(p, child);
    }
  }
  return cf;
}

inline CompressedForest compress(const ExpressionForest& forest,
                                 const std::vector<NodeId>& selected) {
  return compress(forest, selected, std::make_shared<AncestorTable>(forest));
}

}  // namespace mqo

#endif  // MQO_COMPRESSED_FOREST_HPP_
