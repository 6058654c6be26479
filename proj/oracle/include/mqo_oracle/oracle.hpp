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

#ifndef MQO_ORACLE_ORACLE_HPP_
#define MQO_ORACLE_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mqo/error.hpp"
#include "mqo/expense.hpp"
#include "mqo/forest.hpp"
#include "mqo/instance.hpp"

namespace mqo::oracle {

/// Plain min-recursion without memoization: a node costs its size if it is
/// a leaf, otherwise the cheapest producer's cost plus its operands' costs,
/// and selected nodes may be read at their size instead.
inline double recursive_cost(const ExpressionForest& f, NodeId n,
                             const std::vector<std::uint8_t>& z) {
  const EqNode& e = f.eq(n);
  double derive = e.size;
  if (!e.producers.empty()) {
    derive = std::numeric_limits<double>::infinity();
    for (NodeId p : e.producers) {
      double c = f.op(p).cost;
      for (NodeId in : f.op(p).inputs) c += recursive_cost(f, in, z);
      derive = std::min(derive, c);
    }
  }
  return z[n] ? std::min(derive, e.size) : derive;
}

inline double recursive_benefit(const ExpressionForest& f,
                                const std::vector<std::uint8_t>& z) {
  const std::vector<std::uint8_t> none(f.eq_count(), 0);
  double total = 0.0;
  for (const Root& r : f.roots())
    total += r.weight * (recursive_cost(f, r.eq, none) - recursive_cost(f, r.eq, z));
  return total;
}

struct OracleResult {
  double optimum = 0.0;
  std::vector<std::vector<NodeId>> selections;  // every optimal selection
  std::uint64_t evaluations = 0;
};

/// Every subset of the candidates, benefit by min-recursion, expense by the
/// instance's model. Selections within 1e-9 of the best are all listed.
inline OracleResult brute_force_select(const CspInstance& inst,
                                       std::size_t cap = 20) {
  const auto& cands = inst.candidates();
  if (cands.size() > cap)
    throw ResourceLimitError("brute force is capped at " + std::to_string(cap) +
                             " candidates");
  const auto& f = inst.forest();
  struct Entry {
    double benefit;
    std::vector<NodeId> ids;
  };
  std::vector<Entry> feasible;
  OracleResult out;
  std::vector<std::uint8_t> z(f.eq_count(), 0);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << cands.size()); ++m) {
    std::vector<NodeId> ids;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      z[cands[i]] = (m >> i) & 1U;
      if (z[cands[i]]) ids.push_back(cands[i]);
    }
    ++out.evaluations;
    if (!inst.feasible(total_expense(inst.expense_model(), f, z))) continue;
    feasible.push_back({recursive_benefit(f, z), std::move(ids)});
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& e : feasible) best = std::max(best, e.benefit);
  out.optimum = best;
  for (auto& e : feasible)
    if (std::fabs(e.benefit - best) <= 1e-9 * std::max(1.0, std::fabs(best)))
      out.selections.push_back(std::move(e.ids));
  std::sort(out.selections.begin(), out.selections.end());
  return out;
}

/// Unfolds every root into its tree of root-to-node paths and counts, per
/// eq-node, the weighted number of paths that end there because the node is
/// read from storage. A selected node is read when storing it pays off
/// (size below its from-scratch cost) and reading is no dearer than
/// computing it with the reuse available below it. AND-forests only.
inline std::vector<double> enumerate_flows(const ExpressionForest& f,
                                           const std::vector<std::uint8_t>& z,
                                           std::uint64_t path_cap = 1'000'000) {
  if (!f.is_and_forest())
    throw UnsupportedStructureError("flow enumeration needs an AND-forest");
  const std::vector<std::uint8_t> none(f.eq_count(), 0);
  std::vector<double> count(f.eq_count(), 0.0);
  std::uint64_t paths = 0;
  auto reused = [&](NodeId n) {
    const EqNode& e = f.eq(n);
    if (!z[n] || e.producers.empty()) return false;
    const OpNode& op = f.op(e.producers.front());
    double scratch = op.cost, with_reuse = op.cost;
    for (NodeId in : op.inputs) {
      scratch += recursive_cost(f, in, none);
      with_reuse += recursive_cost(f, in, z);
    }
    return scratch - e.size > 0.0 && e.size <= with_reuse;
  };
  auto walk = [&](auto&& self, NodeId n, double weight) -> void {
    if (++paths > path_cap)
      throw ResourceLimitError("flow enumeration exceeded " +
                               std::to_string(path_cap) + " paths");
    if (reused(n)) {
      count[n] += weight;
      return;
    }
    const EqNode& e = f.eq(n);
    if (e.producers.empty()) return;
    for (NodeId in : f.op(e.producers.front()).inputs) self(self, in, weight);
  };
  for (const Root& r : f.roots()) walk(walk, r.eq, r.weight);
  return count;
}

}  // namespace mqo::oracle

#endif  // MQO_ORACLE_ORACLE_HPP_
