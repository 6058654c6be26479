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

#ifndef MQO_ALGORITHMS_GREEDY_HPP_
#define MQO_ALGORITHMS_GREEDY_HPP_

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mqo/cost_model.hpp"
#include "mqo/error.hpp"
#include "mqo/instance.hpp"
#include "mqo/report.hpp"

namespace mqo {

namespace detail {

// Extends `seed` greedily by best marginal benefit per unit of marginal
// expense. Candidates whose expense delta is not positive count as free
// (infinite ratio). Only the picked candidate and its ancestors are
// re-evaluated when a marginal is computed.
inline void greedy_extend(const CspInstance& inst, const Mask& seed,
                          AlgorithmReport& r) {
  const auto& forest = inst.forest();
  CostCache cache(forest);
  for (NodeId c : mask_ids(seed)) cache.add(c);
  Mask z = seed;
  double expense = inst.expense(z);
  r.trace.push_back({cache.benefit(), expense});
  const bool additive = inst.expense_model().is_static();
  std::uint64_t marginals = 0;

  for (;;) {
    NodeId pick = 0;
    bool found = false;
    double best_ratio = 0.0, best_gain = 0.0, best_expense = 0.0;
    const double current = cache.benefit();
    for (NodeId c : inst.candidates()) {
      if (z[c]) continue;
      double e;
      if (additive) {
        e = expense + forest.eq(c).size;
      } else {
        z[c] = 1;
        e = inst.expense(z);
        z[c] = 0;
      }
      if (!inst.feasible(e)) continue;
      ++marginals;
      const double gain = cache.benefit_with(c) - current;
      if (!(gain > kTolerance)) continue;
      const double de = e - expense;
      const double ratio =
          de > 0.0 ? gain / de : std::numeric_limits<double>::infinity();
      if (!found || ratio > best_ratio ||
          (ratio == best_ratio && gain > best_gain)) {
        found = true;
        pick = c;
        best_ratio = ratio;
        best_gain = gain;
        best_expense = e;
      }
    }
    if (!found) break;
    z[pick] = 1;
    cache.add(pick);
    expense = best_expense;
    ++r.iterations;
    r.trace.push_back({cache.benefit(), expense});
  }
  settle(inst, z, cache.benefit(), expense, r);
  r.counters["marginal_evaluations"] += marginals;
  r.counters["recomputed_nodes"] += cache.recomputed_nodes();
}

}  // namespace detail

/// Greedy selection by marginal benefit per marginal expense, stopping when
/// no feasible candidate improves the benefit.
inline AlgorithmReport greedy(const CspInstance& inst) {
  detail::Stopwatch clock;
  AlgorithmReport r;
  r.algo = "greedy";
  detail::greedy_extend(inst, inst.empty_mask(), r);
  r.elapsed_ns = clock.elapsed_ns();
  return r;
}

struct GreedyMkParams {
  std::size_t k = 2;                 // largest seed set tried exhaustively
  std::uint64_t m_cap = 1'000'000;   // maximum number of seed sets
};

/// Finds the best feasible seed set of at most k candidates by enumeration,
/// then extends it greedily.
inline AlgorithmReport greedy_mk(const CspInstance& inst,
                                 const GreedyMkParams& params = {}) {
  detail::Stopwatch clock;
  const std::vector<NodeId> pool = admissible_candidates(inst);
  const std::size_t n = pool.size();
  if (params.k > inst.candidates().size())
    throw InvalidArgumentError("greedy_mk: k = " + std::to_string(params.k) +
                               " exceeds the candidate count " +
                               std::to_string(inst.candidates().size()));
  const std::size_t k = std::min(params.k, n);
  std::uint64_t seeds = 0, binom = 1;
  for (std::size_t i = 0; i <= k; ++i) {
    if (i > 0) binom = binom * (n - i + 1) / i;
    seeds += binom;
    if (seeds > params.m_cap)
      throw ResourceLimitError("greedy_mk: more than " +
                               std::to_string(params.m_cap) + " seed sets");
  }

  std::vector<NodeId> best_ids;
  double best_b = 0.0, best_e = 0.0;
  bool have = false;
  std::vector<std::size_t> idx;
  Mask z = inst.empty_mask();
  auto visit = [&] {
    std::vector<NodeId> ids;
    for (std::size_t i : idx) ids.push_back(pool[i]);
    std::fill(z.begin(), z.end(), 0);
    for (NodeId c : ids) z[c] = 1;
    const double e = inst.expense(z);
    if (!inst.feasible(e)) return;
    const double b = inst.benefit(z);
    if (!have || detail::better_selection(b, e, ids, best_b, best_e, best_ids)) {
      have = true;
      best_b = b;
      best_e = e;
      best_ids = std::move(ids);
    }
  };
  // Subsets in order of size, each size in lexicographic index order.
  for (std::size_t size = 0; size <= k; ++size) {
    idx.resize(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    for (;;) {
      visit();
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }

  AlgorithmReport r;
  r.algo = "greedy_mk";
  detail::greedy_extend(
      inst, make_mask(inst.forest(), std::span<const NodeId>(best_ids)), r);
  r.counters["seed_sets"] = seeds;
  r.elapsed_ns = clock.elapsed_ns();
  return r;
}

}  // namespace mqo

#endif  // MQO_ALGORITHMS_GREEDY_HPP_
