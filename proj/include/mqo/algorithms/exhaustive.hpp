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

#ifndef MQO_ALGORITHMS_EXHAUSTIVE_HPP_
#define MQO_ALGORITHMS_EXHAUSTIVE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "mqo/error.hpp"
#include "mqo/instance.hpp"
#include "mqo/parallel.hpp"
#include "mqo/report.hpp"

namespace mqo {

struct ExhaustiveParams {
  std::size_t cap = 20;  // maximum number of candidates enumerated
};

/// Enumerates every subset of the candidates that can appear in a feasible
/// selection and returns the best feasible one (ties: lower expense, then
/// lexicographically smaller selection). Subset ranges are split across
/// `threads` workers and merged in range order.
inline AlgorithmReport exhaustive(const CspInstance& inst,
                                  const ExhaustiveParams& params = {},
                                  std::size_t threads = 1) {
  detail::Stopwatch clock;
  const std::vector<NodeId> pool = admissible_candidates(inst);
  if (pool.size() > params.cap)
    throw ResourceLimitError("exhaustive search is capped at " +
                             std::to_string(params.cap) + " candidates, got " +
                             std::to_string(pool.size()));
  const std::uint64_t subsets = std::uint64_t{1} << pool.size();

  struct Best {
    double benefit = 0.0;
    double expense = 0.0;
    std::vector<NodeId> ids;
    std::uint64_t feasible = 0;
  };
  const std::size_t shards =
      subsets < 4096 ? 1 : std::min<std::size_t>(threads * 4, 256);
  std::vector<Best> best(shards);
  parallel_for(shards, threads, [&](std::size_t s) {
    const std::uint64_t begin = subsets * s / shards;
    const std::uint64_t end = subsets * (s + 1) / shards;
    Best local;
    local.benefit = -1.0;
    Mask z = inst.empty_mask();
    std::vector<NodeId> ids;
    for (std::uint64_t m = begin; m < end; ++m) {
      ids.clear();
      for (std::size_t i = 0; i < pool.size(); ++i) {
        const bool on = (m >> i) & 1U;
        z[pool[i]] = on;
        if (on) ids.push_back(pool[i]);
      }
      const double e = inst.expense(z);
      if (!inst.feasible(e)) continue;
      ++local.feasible;
      const double b = inst.benefit(z);
      if (local.benefit < 0.0 ||
          detail::better_selection(b, e, ids, local.benefit, local.expense,
                                   local.ids)) {
        local.benefit = b;
        local.expense = e;
        local.ids = ids;
      }
    }
    best[s] = std::move(local);
  });

  Best winner;
  winner.benefit = -1.0;
  std::uint64_t feasible = 0;
  for (auto& b : best) {
    feasible += b.feasible;
    if (b.benefit < 0.0) continue;
    if (winner.benefit < 0.0 ||
        detail::better_selection(b.benefit, b.expense, b.ids, winner.benefit,
                                 winner.expense, winner.ids))
      winner = b;
  }

  AlgorithmReport r;
  r.algo = "exhaustive";
  const Mask z = make_mask(inst.forest(), std::span<const NodeId>(winner.ids));
  detail::settle(inst, z, winner.benefit, winner.expense, r);
  r.iterations = subsets;
  r.counters["subsets"] = subsets;
  r.counters["feasible_subsets"] = feasible;
  r.elapsed_ns = clock.elapsed_ns();
  return r;
}

}  // namespace mqo

#endif  // MQO_ALGORITHMS_EXHAUSTIVE_HPP_
