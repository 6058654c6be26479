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

// Expression forests: bipartite AND-OR DAGs of data (eq) nodes and operation
// (op) nodes shared across the queries of a workload.
//
// Adjacency is stored downward: an eq-node lists the op-nodes that can
// produce it (alternatives, OR semantics) and an op-node lists the eq-nodes
// it consumes (all required, AND semantics).

#ifndef MQO_FOREST_HPP_
#define MQO_FOREST_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mqo/error.hpp"

namespace mqo {

/// Dense index of a node within its kind (eq-nodes and op-nodes are numbered
/// independently, each from 0 in insertion order).
using NodeId = std::uint32_t;

struct EqNode {
  NodeId id = 0;
  std::string label;
  double size = 0.0;  // also the time to read the data once
  std::vector<NodeId> producers;
  bool candidate = false;
};

struct OpNode {
  NodeId id = 0;
  std::string label;
  double cost = 0.0;  // the operation alone, operands excluded
  std::vector<NodeId> inputs;
  NodeId output = 0;
};

struct Root {
  NodeId eq = 0;
  double weight = 1.0;
};

/// Immutable, validated expression forest. Construct through ForestBuilder.
class ExpressionForest {
 public:
  ExpressionForest() = default;

  std::size_t eq_count() const { return eq_nodes_.size(); }
  std::size_t op_count() const { return op_nodes_.size(); }
  const EqNode& eq(NodeId id) const { return eq_nodes_[id]; }
  const OpNode& op(NodeId id) const { return op_nodes_[id]; }
  std::span<const EqNode> eq_nodes() const { return eq_nodes_; }
  std::span<const OpNode> op_nodes() const { return op_nodes_; }
  std::span<const Root> roots() const { return roots_; }

  /// Eq-nodes ordered so that every node follows all of its descendants.
  std::span<const NodeId> topo_order() const { return topo_; }

  /// Distinct eq-nodes whose producers consume `id` (one level up).
  std::span<const NodeId> parents(NodeId id) const { return parents_[id]; }

  /// True when no eq-node has more than one producer.
  bool is_and_forest() const { return and_forest_; }

  std::vector<NodeId> candidates() const {
    std::vector<NodeId> out;
    for (const auto& n : eq_nodes_)
      if (n.candidate) out.push_back(n.id);
    return out;
  }

  /// Copy with a different candidate mask; structure is unchanged.
  ExpressionForest with_candidates(const std::vector<NodeId>& ids) const {
    ExpressionForest copy = *this;
    for (auto& n : copy.eq_nodes_) n.candidate = false;
    for (NodeId id : ids) {
      if (id >= copy.eq_nodes_.size())
        throw InvalidArgumentError("candidate id out of range: " +
                                   std::to_string(id));
      copy.eq_nodes_[id].candidate = true;
    }
    return copy;
  }

  std::optional<NodeId> find_eq(const std::string& label) const {
    for (const auto& n : eq_nodes_)
      if (n.label == label) return n.id;
    return std::nullopt;
  }

  NodeId eq_by_label(const std::string& label) const {
    if (auto id = find_eq(label)) return *id;
    throw InvalidArgumentError("no eq-node labelled '" + label + "'");
  }

 private:
  friend class ForestBuilder;

  std::vector<EqNode> eq_nodes_;
  std::vector<OpNode> op_nodes_;
  std::vector<Root> roots_;
  std::vector<NodeId> topo_;
  std::vector<std::vector<NodeId>> parents_;
  bool and_forest_ = true;
};

namespace detail {

// Kahn's algorithm over the eq-level graph. Ready nodes are released in
// ascending id order. Returns false on a cycle.
inline bool eq_topological_order(
    const std::vector<EqNode>& eqs, const std::vector<OpNode>& ops,
    std::vector<NodeId>& order) {
  const std::size_t n = eqs.size();
  std::vector<std::size_t> pending(n, 0);
  std::vector<std::vector<NodeId>> uses(n);
  for (const auto& e : eqs) {
    std::vector<NodeId> kids;
    for (NodeId p : e.producers)
      for (NodeId in : ops[p].inputs) kids.push_back(in);
    std::sort(kids.begin(), kids.end());
    kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
    pending[e.id] = kids.size();
    for (NodeId k : kids) uses[k].push_back(e.id);
  }
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (NodeId i = 0; i < n; ++i)
    if (pending[i] == 0) ready.push(i);
  order.clear();
  order.reserve(n);
  while (!ready.empty()) {
    const NodeId next = ready.top();
    ready.pop();
    order.push_back(next);
    for (NodeId u : uses[next])
      if (--pending[u] == 0) ready.push(u);
  }
  return order.size() == n;
}

}  // namespace detail

/// Returns the eq-nodes of a forest so that each one follows everything
/// reachable below it; ties are released by ascending id.
inline std::vector<NodeId> topo_order(const ExpressionForest& forest) {
  return {forest.topo_order().begin(), forest.topo_order().end()};
}

/// Incremental construction of an ExpressionForest. `build()` validates every
/// structural invariant and throws MalformedInputError on violation.
class ForestBuilder {
 public:
  NodeId add_eq(std::string label, double size, bool candidate = false) {
    EqNode n;
    n.id = static_cast<NodeId>(eqs_.size());
    n.label = std::move(label);
    n.size = size;
    n.candidate = candidate;
    eqs_.push_back(std::move(n));
    return eqs_.back().id;
  }

  NodeId add_op(std::string label, double cost, std::vector<NodeId> inputs,
                NodeId output) {
    OpNode o;
    o.id = static_cast<NodeId>(ops_.size());
    o.label = std::move(label);
    o.cost = cost;
    o.inputs = std::move(inputs);
    o.output = output;
    if (output < eqs_.size()) eqs_[output].producers.push_back(o.id);
    ops_.push_back(std::move(o));
    return ops_.back().id;
  }

  void add_root(NodeId eq, double weight = 1.0) {
    roots_.push_back({eq, weight});
  }

  void set_candidate(NodeId eq, bool value) {
    if (eq >= eqs_.size())
      throw InvalidArgumentError("eq id out of range: " + std::to_string(eq));
    eqs_[eq].candidate = value;
  }

  std::size_t eq_count() const { return eqs_.size(); }
  double eq_size(NodeId id) const { return eqs_.at(id).size; }
  const std::vector<NodeId>& eq_producers(NodeId id) const {
    return eqs_.at(id).producers;
  }

  // Rewires one operand of an existing op-node.
  void patch_input(NodeId op, std::size_t slot, NodeId eq) {
    ops_.at(op).inputs.at(slot) = eq;
  }

  ExpressionForest build() && {
    validate_or_throw();
    ExpressionForest f;
    f.eq_nodes_ = std::move(eqs_);
    f.op_nodes_ = std::move(ops_);
    f.roots_ = std::move(roots_);
    detail::eq_topological_order(f.eq_nodes_, f.op_nodes_, f.topo_);
    f.parents_.assign(f.eq_nodes_.size(), {});
    for (const auto& e : f.eq_nodes_) {
      if (e.producers.size() > 1) f.and_forest_ = false;
      for (NodeId p : e.producers)
        for (NodeId in : f.op_nodes_[p].inputs) f.parents_[in].push_back(e.id);
    }
    for (auto& ps : f.parents_) {
      std::sort(ps.begin(), ps.end());
      ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    }
    return f;
  }

  ExpressionForest build() const& { return ForestBuilder(*this).build(); }

  /// Every invariant violation found, as human-readable diagnostics.
  std::vector<std::string> violations() const {
    std::vector<std::string> out;
    auto where_eq = [](const EqNode& e) {
      return "eq_nodes[" + std::to_string(e.id) + "] ('" + e.label + "')";
    };
    auto where_op = [](const OpNode& o) {
      return "op_nodes[" + std::to_string(o.id) + "] ('" + o.label + "')";
    };
    for (const auto& e : eqs_) {
      if (!std::isfinite(e.size) || e.size < 0)
        out.push_back(where_eq(e) + ": size must be finite and >= 0");
    }
    for (const auto& o : ops_) {
      if (!std::isfinite(o.cost) || o.cost < 0)
        out.push_back(where_op(o) + ": cost must be finite and >= 0");
      if (o.inputs.empty()) out.push_back(where_op(o) + ": no inputs");
      for (NodeId in : o.inputs)
        if (in >= eqs_.size())
          out.push_back(where_op(o) + ": input " + std::to_string(in) +
                        " is not an eq-node");
      if (o.output >= eqs_.size())
        out.push_back(where_op(o) + ": output " + std::to_string(o.output) +
                      " is not an eq-node");
    }
    for (std::size_t i = 0; i < roots_.size(); ++i) {
      const auto& r = roots_[i];
      if (r.eq >= eqs_.size())
        out.push_back("roots[" + std::to_string(i) + "]: eq " +
                      std::to_string(r.eq) + " does not exist");
      if (!std::isfinite(r.weight) || r.weight <= 0)
        out.push_back("roots[" + std::to_string(i) +
                      "]: weight must be positive");
    }
    if (!out.empty()) return out;
    std::vector<NodeId> order;
    if (!detail::eq_topological_order(eqs_, ops_, order))
      out.push_back("forest contains a cycle");
    return out;
  }

 private:
  void validate_or_throw() const {
    const auto problems = violations();
    if (problems.empty()) return;
    std::string msg = problems.front();
    if (problems.size() > 1)
      msg += " (and " + std::to_string(problems.size() - 1) + " more)";
    throw MalformedInputError(msg);
  }

  std::vector<EqNode> eqs_;
  std::vector<OpNode> ops_;
  std::vector<Root> roots_;
};

// ---------------------------------------------------------------------------
// Nested plan descriptions

/// One eq layer of a nested plan description. A node either defines data
/// (label, size, producers) or references another node of the same
/// description by label (`ref`), which is how a query plan shares a
/// sub-result between several operands.
struct PlanNode {
  struct Producer {
    std::string label;
    double cost = 0.0;
    std::vector<PlanNode> inputs;
  };

  std::string label;
  double size = 0.0;
  bool candidate = true;
  std::vector<Producer> producers;
  std::string ref;

  static PlanNode leaf(std::string label, double size, bool candidate = false) {
    PlanNode n;
    n.label = std::move(label);
    n.size = size;
    n.candidate = candidate;
    return n;
  }

  static PlanNode derived(std::string label, double size, std::string op,
                          double cost, std::vector<PlanNode> inputs,
                          bool candidate = true) {
    PlanNode n;
    n.label = std::move(label);
    n.size = size;
    n.candidate = candidate;
    n.producers.push_back({std::move(op), cost, std::move(inputs)});
    return n;
  }

  static PlanNode reference(std::string label) {
    PlanNode n;
    n.ref = std::move(label);
    return n;
  }
};

/// Builds a single-root forest from a nested description. References resolve
/// by label after the whole description is read; a reference that closes a
/// loop makes the forest cyclic and is reported as malformed.
inline ExpressionForest build_tree(const PlanNode& root) {
  ForestBuilder b;
  std::map<std::string, NodeId> by_label;
  struct PendingRef {
    NodeId op;
    std::size_t slot;
    std::string label;
  };
  std::vector<PendingRef> refs;

  std::function<NodeId(const PlanNode&)> visit = [&](const PlanNode& n) {
    if (by_label.count(n.label))
      throw MalformedInputError("label '" + n.label +
                                "' defined twice; use a reference");
    const NodeId id = b.add_eq(n.label, n.size, n.candidate);
    by_label.emplace(n.label, id);
    for (const auto& p : n.producers) {
      if (p.inputs.empty())
        throw MalformedInputError("operation '" + p.label + "' has no inputs");
      std::vector<NodeId> inputs(p.inputs.size(), id);
      std::vector<std::size_t> ref_slots;
      for (std::size_t i = 0; i < p.inputs.size(); ++i) {
        if (p.inputs[i].ref.empty())
          inputs[i] = visit(p.inputs[i]);
        else
          ref_slots.push_back(i);
      }
      const NodeId op = b.add_op(p.label, p.cost, std::move(inputs), id);
      for (std::size_t slot : ref_slots)
        refs.push_back({op, slot, p.inputs[slot].ref});
    }
    return id;
  };

  if (!root.ref.empty())
    throw MalformedInputError("the root of a description cannot be a reference");
  b.add_root(visit(root));
  for (const auto& r : refs) {
    auto it = by_label.find(r.label);
    if (it == by_label.end())
      throw MalformedInputError("unresolved reference '" + r.label + "'");
    b.patch_input(r.op, r.slot, it->second);
  }
  return std::move(b).build();
}

/// Merges single-root forests into one forest, unifying eq-nodes whose
/// structural signatures match: same label and, producer by producer, the
/// same op label over the same (already unified) operands. Every input root
/// becomes a root of the result, in input order.
inline ExpressionForest merge_trees(std::span<const ExpressionForest> trees) {
  using OpKey = std::pair<std::string, std::vector<NodeId>>;
  using EqKey = std::pair<std::string, std::vector<OpKey>>;
  ForestBuilder b;
  std::map<EqKey, NodeId> eq_index;
  std::vector<double> op_cost;  // by merged op id

  for (std::size_t t = 0; t < trees.size(); ++t) {
    const ExpressionForest& tree = trees[t];
    std::vector<NodeId> mapped(tree.eq_count(), 0);
    for (NodeId id : tree.topo_order()) {
      const EqNode& e = tree.eq(id);
      EqKey key{e.label, {}};
      for (NodeId p : e.producers) {
        const OpNode& o = tree.op(p);
        std::vector<NodeId> ins;
        ins.reserve(o.inputs.size());
        for (NodeId in : o.inputs) ins.push_back(mapped[in]);
        key.second.emplace_back(o.label, std::move(ins));
      }
      auto found = eq_index.find(key);
      if (found != eq_index.end()) {
        const NodeId m = found->second;
        // Sizes and operation costs of unified nodes must agree.
        if (b.eq_size(m) != e.size)
          throw InconsistentInputError(
              "eq-node '" + e.label + "' appears with sizes " +
              std::to_string(b.eq_size(m)) + " and " + std::to_string(e.size));
        const auto& merged_producers = b.eq_producers(m);
        for (std::size_t i = 0; i < e.producers.size(); ++i) {
          const double c = tree.op(e.producers[i]).cost;
          if (op_cost[merged_producers[i]] != c)
            throw InconsistentInputError(
                "operation '" + tree.op(e.producers[i]).label +
                "' producing '" + e.label + "' appears with different costs");
        }
        if (e.candidate) b.set_candidate(m, true);
        mapped[id] = m;
        continue;
      }
      const NodeId m = b.add_eq(e.label, e.size, e.candidate);
      for (std::size_t i = 0; i < e.producers.size(); ++i) {
        const OpNode& o = tree.op(e.producers[i]);
        b.add_op(o.label, o.cost, key.second[i].second, m);
        op_cost.push_back(o.cost);
      }
      eq_index.emplace(std::move(key), m);
      mapped[id] = m;
    }
    if (tree.roots().size() != 1)
      throw InvalidArgumentError("merge_trees expects single-root inputs; tree " +
                                 std::to_string(t) + " has " +
                                 std::to_string(tree.roots().size()));
    for (const Root& r : tree.roots()) b.add_root(mapped[r.eq], r.weight);
  }
  return std::move(b).build();
}

inline ExpressionForest merge_trees(std::initializer_list<ExpressionForest> trees) {
  std::vector<ExpressionForest> v(trees);
  return merge_trees(std::span<const ExpressionForest>(v));
}

/// Dense reachability table over eq-nodes: `is_ancestor(a, b)` answers
/// whether b lies on some derivation of a (a != b). Quadratic in the forest
/// size to build and store.
class AncestorTable {
 public:
  AncestorTable() = default;

  explicit AncestorTable(const ExpressionForest& forest)
      : n_(forest.eq_count()), words_((n_ + 63) / 64), bits_(n_ * words_, 0) {
    for (NodeId id : forest.topo_order()) {
      std::uint64_t* row = &bits_[id * words_];
      for (NodeId p : forest.eq(id).producers) {
        for (NodeId in : forest.op(p).inputs) {
          row[in / 64] |= std::uint64_t{1} << (in % 64);
          const std::uint64_t* sub = &bits_[in * words_];
          for (std::size_t w = 0; w < words_; ++w) row[w] |= sub[w];
        }
      }
    }
  }

  bool is_ancestor(NodeId a, NodeId b) const {
    return (bits_[a * words_ + b / 64] >> (b % 64)) & 1U;
  }

  std::size_t size() const { return n_; }

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace mqo

#endif  // MQO_FOREST_HPP_
