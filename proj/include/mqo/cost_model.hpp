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

// Cost evaluation under computation-flow semantics.
//
// A node that several operands share is recomputed once per flow unless it
// is reused, so from-scratch costs add up full child costs even when
// children are shared. With a selection z the cost of an eq-node is
//
//   cost(n) = min( reuse_cost(n) if z[n],
//                  min over producers p of cost(p) + sum cost(inputs of p) )
//
// and leaves cost their size. The value does not depend on the flow that
// reaches n, so one memoized bottom-up pass is exact.

#ifndef MQO_COST_MODEL_HPP_
#define MQO_COST_MODEL_HPP_

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "mqo/error.hpp"
#include "mqo/forest.hpp"

namespace mqo {

/// Selection vector indexed by eq id; non-zero means "available for reuse".
using Mask = std::vector<std::uint8_t>;

inline constexpr double kTolerance = 1e-9;

inline Mask make_mask(const ExpressionForest& forest,
                      std::span<const NodeId> selected) {
  Mask z(forest.eq_count(), 0);
  for (NodeId c : selected) {
    if (c >= z.size())
      throw InvalidArgumentError("eq id out of range: " + std::to_string(c));
    z[c] = 1;
  }
  return z;
}

inline Mask make_mask(const ExpressionForest& forest,
                      std::initializer_list<NodeId> selected) {
  std::vector<NodeId> v(selected);
  return make_mask(forest, std::span<const NodeId>(v));
}

inline std::vector<NodeId> mask_ids(const Mask& z) {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < z.size(); ++i)
    if (z[i]) out.push_back(i);
  return out;
}

struct CostTable {
  std::vector<double> ex_cost;       // from-scratch derivation cost
  std::vector<double> reuse_cost;    // cost of reading a stored copy
  std::vector<double> unit_benefit;  // ex_cost - reuse_cost
  std::vector<NodeId> best_producer; // cheapest producer; leaves: npos
  static constexpr NodeId kNoProducer = std::numeric_limits<NodeId>::max();
};

inline CostTable ex_costs(const ExpressionForest& forest) {
  const std::size_t n = forest.eq_count();
  CostTable t;
  t.ex_cost.assign(n, 0.0);
  t.reuse_cost.assign(n, 0.0);
  t.unit_benefit.assign(n, 0.0);
  t.best_producer.assign(n, CostTable::kNoProducer);
  for (NodeId id : forest.topo_order()) {
    const EqNode& e = forest.eq(id);
    t.reuse_cost[id] = e.size;
    if (e.producers.empty()) {
      t.ex_cost[id] = e.size;
    } else {
      double best = std::numeric_limits<double>::infinity();
      for (NodeId p : e.producers) {  // ascending op id; strict < keeps first
        const OpNode& o = forest.op(p);
        double c = o.cost;
        for (NodeId in : o.inputs) c += t.ex_cost[in];
        if (c < best) {
          best = c;
          t.best_producer[id] = p;
        }
      }
      t.ex_cost[id] = best;
    }
    t.unit_benefit[id] = t.ex_cost[id] - t.reuse_cost[id];
  }
  return t;
}

namespace detail {

inline double producer_cost(const OpNode& o, std::span<const double> cost) {
  double c = o.cost;
  for (NodeId in : o.inputs) c += cost[in];
  return c;
}

// Cost of deriving `id` through its producers only (no reuse of id itself).
inline double derivation_cost(const ExpressionForest& forest, NodeId id,
                              std::span<const double> cost) {
  const EqNode& e = forest.eq(id);
  if (e.producers.empty()) return e.size;
  double best = std::numeric_limits<double>::infinity();
  for (NodeId p : e.producers)
    best = std::min(best, producer_cost(forest.op(p), cost));
  return best;
}

}  // namespace detail

/// Per-node cost under selection z (min recursion, memoized bottom-up).
inline std::vector<double> node_costs(const ExpressionForest& forest,
                                      const Mask& z) {
  std::vector<double> cost(forest.eq_count(), 0.0);
  for (NodeId id : forest.topo_order()) {
    double c = detail::derivation_cost(forest, id, cost);
    if (z[id]) c = std::min(c, forest.eq(id).size);
    cost[id] = c;
  }
  return cost;
}

/// Lightest computation path for one query root under selection z.
inline double query_cost(const ExpressionForest& forest, NodeId root,
                         const Mask& z) {
  return node_costs(forest, z)[root];
}

/// Weighted workload execution time T_z(Q).
inline double workload_cost(const ExpressionForest& forest, const Mask& z) {
  const auto cost = node_costs(forest, z);
  double total = 0.0;
  for (const Root& r : forest.roots()) total += r.weight * cost[r.eq];
  return total;
}

/// Benefit T_empty(Q) - T_z(Q), summed root by root.
inline double workload_benefit(const ExpressionForest& forest, const Mask& z) {
  const Mask none(forest.eq_count(), 0);
  const auto base = node_costs(forest, none);
  const auto with = node_costs(forest, z);
  double total = 0.0;
  for (const Root& r : forest.roots())
    total += r.weight * (base[r.eq] - with[r.eq]);
  return total;
}

// ---------------------------------------------------------------------------
// Reuse oracle

/// Outcome of the two-pass reuse oracle for one selection.
struct SelectionState {
  Mask z;
  std::vector<NodeId> reused;          // ascending
  std::vector<double> n_reuses;        // weighted flow count per eq-node
  std::vector<double> max_subtree_benefit;
  double total_benefit = 0.0;
  double total_expense = 0.0;          // filled in by callers that know it
  std::uint64_t pass1_visits = 0;
  std::uint64_t pass2_visits = 0;
};

/// Decides, for a fixed selection on an AND-forest, which selected nodes to
/// reuse and how often, in two linear passes.
///
/// Pass 1 (descendants first) computes the best benefit obtainable inside
/// each subtree: the larger of the operands' sum and the node's own reuse
/// benefit. A node whose own reuse wins (ties included) is reused. Pass 2
/// pushes weighted flows down from the roots and stops at reused nodes, so
/// nested candidates can be reused together as long as they sit on
/// different flows.
inline SelectionState reuse_oracle(const ExpressionForest& forest,
                                   const CostTable& costs, const Mask& z) {
  if (!forest.is_and_forest())
    throw UnsupportedStructureError(
        "reuse accounting is only defined for forests without alternative "
        "producers");
  const std::size_t n = forest.eq_count();
  SelectionState s;
  s.z = z;
  s.n_reuses.assign(n, 0.0);
  s.max_subtree_benefit.assign(n, 0.0);
  std::vector<char> reuse_here(n, 0);

  for (NodeId id : forest.topo_order()) {
    ++s.pass1_visits;
    double children = 0.0;
    const EqNode& e = forest.eq(id);
    if (!e.producers.empty())
      for (NodeId in : forest.op(e.producers.front()).inputs)
        children += s.max_subtree_benefit[in];
    const double own = z[id] ? std::max(0.0, costs.unit_benefit[id]) : 0.0;
    if (own > 0.0 && own >= children) {
      s.max_subtree_benefit[id] = own;
      reuse_here[id] = 1;
    } else {
      s.max_subtree_benefit[id] = children;
    }
  }

  std::vector<double> flow(n, 0.0);
  for (const Root& r : forest.roots()) flow[r.eq] += r.weight;
  const auto order = forest.topo_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId id = *it;
    if (flow[id] == 0.0) continue;
    ++s.pass2_visits;
    if (reuse_here[id]) {
      s.n_reuses[id] = flow[id];
      continue;  // the flow is served by the stored copy
    }
    const EqNode& e = forest.eq(id);
    if (!e.producers.empty())
      for (NodeId in : forest.op(e.producers.front()).inputs)
        flow[in] += flow[id];
  }

  for (NodeId id = 0; id < n; ++id) {
    if (s.n_reuses[id] > 0.0) {
      s.reused.push_back(id);
      s.total_benefit += costs.unit_benefit[id] * s.n_reuses[id];
    }
  }
  return s;
}

inline SelectionState reuse_oracle(const ExpressionForest& forest,
                                   const Mask& z) {
  return reuse_oracle(forest, ex_costs(forest), z);
}

/// Number of distinct eq-node ancestors of c; a lower bound on how often c
/// is used when no alternative plans exist.
inline std::size_t ancestor_count_estimate(const ExpressionForest& forest,
                                           NodeId c) {
  if (c >= forest.eq_count())
    throw InvalidArgumentError("eq id out of range: " + std::to_string(c));
  std::vector<char> seen(forest.eq_count(), 0);
  std::vector<NodeId> stack{c};
  std::size_t count = 0;
  while (!stack.empty()) {
    const NodeId x = stack.back();
    stack.pop_back();
    for (NodeId p : forest.parents(x)) {
      if (seen[p]) continue;
      seen[p] = 1;
      ++count;
      stack.push_back(p);
    }
  }
  return count;
}

// ---------------------------------------------------------------------------
// Strict nesting

struct StrictNestingResult {
  double best = 0.0;
  std::vector<NodeId> used;
  std::uint64_t evaluations = 0;  // subsets examined
};

/// Best utility when no two reused candidates may be nested, the rule used by
/// ILP formulations that forbid an ancestor and a descendant from both being
/// used. Each candidate's utility is its unit benefit times its flow count
/// when reused alone. Brute force over subsets of the selection.
inline StrictNestingResult strict_nesting_search(const ExpressionForest& forest,
                                                 const Mask& z,
                                                 std::size_t node_cap = 20) {
  if (forest.eq_count() > node_cap)
    throw ResourceLimitError("strict nesting search is capped at " +
                             std::to_string(node_cap) + " eq-nodes, got " +
                             std::to_string(forest.eq_count()));
  const CostTable costs = ex_costs(forest);
  const AncestorTable anc(forest);
  std::vector<NodeId> pool;
  std::vector<double> utility;
  for (NodeId id : mask_ids(z)) {
    Mask alone(forest.eq_count(), 0);
    alone[id] = 1;
    const auto s = reuse_oracle(forest, costs, alone);
    pool.push_back(id);
    utility.push_back(std::max(0.0, costs.unit_benefit[id]) * s.n_reuses[id]);
  }
  StrictNestingResult result;
  const std::uint64_t subsets = std::uint64_t{1} << pool.size();
  for (std::uint64_t m = 0; m < subsets; ++m) {
    ++result.evaluations;
    double total = 0.0;
    bool nested = false;
    for (std::size_t i = 0; i < pool.size() && !nested; ++i) {
      if (!(m >> i & 1U)) continue;
      total += utility[i];
      for (std::size_t j = i + 1; j < pool.size(); ++j) {
        if ((m >> j & 1U) && (anc.is_ancestor(pool[i], pool[j]) ||
                              anc.is_ancestor(pool[j], pool[i]))) {
          nested = true;
          break;
        }
      }
    }
    if (!nested && total > result.best) {
      result.best = total;
      result.used.clear();
      for (std::size_t i = 0; i < pool.size(); ++i)
        if (m >> i & 1U) result.used.push_back(pool[i]);
    }
  }
  return result;
}

inline double strict_nesting_best(const ExpressionForest& forest, const Mask& z,
                                  std::size_t node_cap = 20) {
  return strict_nesting_search(forest, z, node_cap).best;
}

// ---------------------------------------------------------------------------
// Incremental evaluation

/// Caches per-node costs for a current selection and answers "what would the
/// workload cost be with one more candidate" by recomputing only that
/// candidate and its ancestors. Exact on AND-OR forests.
class CostCache {
 public:
  explicit CostCache(const ExpressionForest& forest)
      : forest_(&forest),
        z_(forest.eq_count(), 0),
        position_(forest.eq_count(), 0),
        root_weight_(forest.eq_count(), 0.0),
        affected_(forest.eq_count()) {
    const auto order = forest.topo_order();
    for (std::size_t i = 0; i < order.size(); ++i) position_[order[i]] = i;
    for (const Root& r : forest.roots()) root_weight_[r.eq] += r.weight;
    cost_ = node_costs(forest, z_);
    scratch_ = cost_;
    total_ = total_of(cost_);
    base_total_ = total_;
  }

  const Mask& selection() const { return z_; }
  double total_cost() const { return total_; }
  double benefit() const { return base_total_ - total_; }
  std::uint64_t recomputed_nodes() const { return recomputed_; }

  /// Workload cost if c were added to the selection.
  double cost_with(NodeId c) {
    const auto& chain = affected(c);
    double delta = 0.0;
    for (NodeId id : chain) {
      ++recomputed_;
      double v = detail::derivation_cost(*forest_, id, scratch_);
      if (z_[id] || id == c) v = std::min(v, forest_->eq(id).size);
      delta += root_weight_[id] * (v - cost_[id]);
      scratch_[id] = v;
    }
    for (NodeId id : chain) scratch_[id] = cost_[id];
    return total_ + delta;
  }

  double benefit_with(NodeId c) { return base_total_ - cost_with(c); }

  void add(NodeId c) {
    z_[c] = 1;
    for (NodeId id : affected(c)) {
      ++recomputed_;
      double v = detail::derivation_cost(*forest_, id, cost_);
      if (z_[id]) v = std::min(v, forest_->eq(id).size);
      cost_[id] = v;
      scratch_[id] = v;
    }
    total_ = total_of(cost_);
  }

 private:
  double total_of(const std::vector<double>& cost) const {
    double t = 0.0;
    for (const Root& r : forest_->roots()) t += r.weight * cost[r.eq];
    return t;
  }

  // c and all its ancestors, in topological (descendants-first) order.
  const std::vector<NodeId>& affected(NodeId c) {
    auto& chain = affected_[c];
    if (!chain.empty()) return chain;
    std::vector<char> seen(forest_->eq_count(), 0);
    std::vector<NodeId> stack{c};
    seen[c] = 1;
    while (!stack.empty()) {
      const NodeId x = stack.back();
      stack.pop_back();
      chain.push_back(x);
      for (NodeId p : forest_->parents(x))
        if (!seen[p]) {
          seen[p] = 1;
          stack.push_back(p);
        }
    }
    std::sort(chain.begin(), chain.end(), [&](NodeId a, NodeId b) {
      return position_[a] < position_[b];
    });
    return chain;
  }

  const ExpressionForest* forest_;
  Mask z_;
  std::vector<std::size_t> position_;
  std::vector<double> root_weight_;
  std::vector<std::vector<NodeId>> affected_;
  std::vector<double> cost_;
  std::vector<double> scratch_;
  double total_ = 0.0;
  double base_total_ = 0.0;
  std::uint64_t recomputed_ = 0;
};

}  // namespace mqo

#endif  // MQO_COST_MODEL_HPP_
