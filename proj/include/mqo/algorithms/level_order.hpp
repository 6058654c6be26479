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

#ifndef MQO_ALGORITHMS_LEVEL_ORDER_HPP_
#define MQO_ALGORITHMS_LEVEL_ORDER_HPP_

#include <algorithm>
#include <map>
#include <vector>

#include "mqo/cost_model.hpp"
#include "mqo/forest.hpp"

namespace mqo {

/// For each root, groups the candidates below it by their longest-path
/// depth from that root and keeps only the level whose candidates have the
/// largest summed single-candidate benefit (ties: shallower level). The
/// budget is ignored. Returns the union of kept levels as a mask.
inline Mask level_order_filter(const ExpressionForest& forest) {
  const std::size_t n = forest.eq_count();
  const Mask none(n, 0);
  const auto base = node_costs(forest, none);
  std::vector<double> single(n, 0.0);
  for (NodeId c : forest.candidates()) {
    Mask z = none;
    z[c] = 1;
    const auto with = node_costs(forest, z);
    for (const Root& r : forest.roots())
      single[c] += r.weight * (base[r.eq] - with[r.eq]);
  }

  const auto topo = forest.topo_order();
  Mask keep(n, 0);
  std::vector<long> depth(n);
  for (const Root& root : forest.roots()) {
    std::fill(depth.begin(), depth.end(), -1);
    depth[root.eq] = 0;
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
      if (depth[*it] < 0) continue;
      for (NodeId op : forest.eq(*it).producers)
        for (NodeId in : forest.op(op).inputs)
          depth[in] = std::max(depth[in], depth[*it] + 1);
    }
    std::map<long, double> level_sum;
    for (NodeId c : forest.candidates())
      if (depth[c] >= 0) level_sum[depth[c]] += single[c];
    if (level_sum.empty()) continue;
    long best = level_sum.begin()->first;
    for (const auto& [d, s] : level_sum)
      if (s > level_sum[best]) best = d;
    for (NodeId c : forest.candidates())
      if (depth[c] == best) keep[c] = 1;
  }
  return keep;
}

}  // namespace mqo

#endif  // MQO_ALGORITHMS_LEVEL_ORDER_HPP_
