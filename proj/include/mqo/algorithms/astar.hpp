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

#ifndef MQO_ALGORITHMS_ASTAR_HPP_
#define MQO_ALGORITHMS_ASTAR_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <string>
#include <vector>

#include "mqo/error.hpp"
#include "mqo/instance.hpp"
#include "mqo/report.hpp"

namespace mqo {

struct AStarParams {
  std::size_t cap = 18;
};

/// Best-first search over partial decisions <selected, seen>, deciding
/// candidates in topological order (descendants first). A state is scored
/// by the workload cost it would have if every undecided candidate were
/// free to reuse, which never overestimates any completion; under static
/// expense, undecided candidates that no longer fit are excluded from the
/// bound and branches over budget are cut. The first feasible complete
/// state popped is optimal; states tied with it are drained so the result
/// matches exhaustive enumeration, tie-breaks included.
inline AlgorithmReport astar(const CspInstance& inst,
                             const AStarParams& params = {}) {
  detail::Stopwatch clock;
  std::vector<NodeId> order = admissible_candidates(inst);
  if (order.size() > params.cap)
    throw ResourceLimitError("A* search is capped at " +
                             std::to_string(params.cap) + " candidates, got " +
                             std::to_string(order.size()));
  {
    std::vector<std::size_t> pos(inst.forest().eq_count(), 0);
    const auto topo = inst.forest().topo_order();
    for (std::size_t i = 0; i < topo.size(); ++i) pos[topo[i]] = i;
    std::sort(order.begin(), order.end(),
              [&](NodeId a, NodeId b) { return pos[a] < pos[b]; });
  }
  const std::size_t m = order.size();
  const bool monotone = inst.expense_model().is_static();
  const double limit = inst.budget().limit;

  struct State {
    double f;
    std::uint32_t depth;
    std::uint64_t bits;
    double partial_expense;
  };
  struct Worse {
    bool operator()(const State& a, const State& b) const {
      if (a.f != b.f) return a.f > b.f;
      if (a.depth != b.depth) return a.depth < b.depth;
      return a.bits > b.bits;
    }
  };

  Mask z = inst.empty_mask();
  auto score = [&](std::uint32_t depth, std::uint64_t bits, double partial) {
    for (std::size_t i = 0; i < m; ++i) {
      const NodeId c = order[i];
      if (i < depth) {
        z[c] = (bits >> i) & 1U;
      } else {
        z[c] = !monotone ||
               partial + inst.forest().eq(c).size <= limit + kTolerance;
      }
    }
    return inst.cost(z);
  };

  std::priority_queue<State, std::vector<State>, Worse> open;
  open.push({score(0, 0, 0.0), 0, 0, 0.0});
  std::uint64_t expanded = 0, generated = 1, goals = 0;
  bool have_bound = false;
  double bound = 0.0;
  struct Goal {
    double benefit, expense;
    std::vector<NodeId> ids;
  };
  std::vector<Goal> found;

  while (!open.empty()) {
    const State s = open.top();
    if (have_bound && s.f > bound + kTolerance * std::max(1.0, std::fabs(bound)))
      break;
    open.pop();
    if (s.depth == m) {
      ++goals;
      Mask goal = inst.empty_mask();
      std::vector<NodeId> ids;
      for (std::size_t i = 0; i < m; ++i)
        if ((s.bits >> i) & 1U) goal[order[i]] = 1;
      const double e = inst.expense(goal);
      if (!inst.feasible(e)) continue;
      if (!have_bound) {
        have_bound = true;
        bound = s.f;
      }
      found.push_back({inst.benefit(goal), e, mask_ids(goal)});
      continue;
    }
    ++expanded;
    const std::uint32_t d = s.depth + 1;
    open.push({score(d, s.bits, s.partial_expense), d, s.bits,
               s.partial_expense});
    ++generated;
    const double with = s.partial_expense + inst.forest().eq(order[s.depth]).size;
    if (!monotone || with <= limit + kTolerance) {
      const std::uint64_t bits = s.bits | (std::uint64_t{1} << s.depth);
      open.push({score(d, bits, with), d, bits, with});
      ++generated;
    }
  }

  AlgorithmReport r;
  r.algo = "astar";
  const Goal* best = nullptr;
  for (const auto& g : found)
    if (!best || detail::better_selection(g.benefit, g.expense, g.ids,
                                          best->benefit, best->expense,
                                          best->ids))
      best = &g;
  if (!best) throw InvariantError("A* exhausted the search without a goal");
  detail::settle(inst, make_mask(inst.forest(), std::span<const NodeId>(best->ids)),
                 best->benefit, best->expense, r);
  r.iterations = expanded;
  r.counters["expanded_states"] = expanded;
  r.counters["generated_states"] = generated;
  r.counters["goal_states"] = goals;
  r.counters["subsets"] = std::uint64_t{1} << m;
  r.elapsed_ns = clock.elapsed_ns();
  return r;
}

}  // namespace mqo

#endif  // MQO_ALGORITHMS_ASTAR_HPP_
