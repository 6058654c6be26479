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

// Encodes a small knapsack as a selection problem and solves it both ways.

#include <cstdio>

#include "mqo/mqo.hpp"

int main() {
  const mqo::KnapsackInstance k{{60, 100, 120, 30}, {10, 20, 30, 5}, 50};
  const auto red = mqo::knapsack_reduction(k);
  const auto dp = mqo::knapsack_dp(k);
  const auto r = mqo::astar(red.instance);

  std::printf("scale %g, %zu eq-nodes, budget %g\n", red.scale,
              red.instance.forest().eq_count(), red.instance.budget().limit);
  std::printf("dp optimum %g with items", dp.value);
  for (std::size_t i : dp.items) std::printf(" %zu", i);
  std::printf("\nastar benefit %g with", r.benefit);
  for (mqo::NodeId id : r.selection)
    std::printf(" %s", red.instance.forest().eq(id).label.c_str());
  std::printf(" (%llu states expanded of %llu subsets)\n",
              static_cast<unsigned long long>(r.counters.at("expanded_states")),
              static_cast<unsigned long long>(r.counters.at("subsets")));
  return r.benefit == dp.value ? 0 : 1;
}
