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

#ifndef MQO_INSTANCES_RANDOM_FOREST_HPP_
#define MQO_INSTANCES_RANDOM_FOREST_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "mqo/error.hpp"
#include "mqo/expense.hpp"
#include "mqo/forest.hpp"
#include "mqo/instance.hpp"
#include "mqo/rng.hpp"

namespace mqo {

struct GeneratorConfig {
  std::size_t nodes_min = 8;        // eq-node count range
  std::size_t nodes_max = 12;
  std::size_t fan_in_min = 1;       // operands per operation
  std::size_t fan_in_max = 2;
  double or_prob = 0.0;             // chance of a second producer
  double leaf_fraction = 0.3;       // share of eq-nodes that are base tables
  std::int64_t size_min = 1;
  std::int64_t size_max = 20;
  std::int64_t cost_min = 1;
  std::int64_t cost_max = 20;
  std::size_t component_size = 0;  // > 0: independent blocks of this many nodes
  double budget_fraction = 0.3;     // budget as a share of all candidate sizes
  std::uint64_t seed = 0;
};

inline void validate(const GeneratorConfig& c) {
  auto fail = [](const std::string& msg) { throw ConfigurationError(msg); };
  if (c.nodes_min < 1 || c.nodes_min > c.nodes_max)
    fail("node range must satisfy 1 <= nodes_min <= nodes_max");
  if (c.fan_in_min < 1 || c.fan_in_min > c.fan_in_max)
    fail("fan-in range must satisfy 1 <= fan_in_min <= fan_in_max");
  const std::size_t block =
      c.component_size ? std::min(c.component_size, c.nodes_max) : c.nodes_max;
  if (block > 1 && c.fan_in_min > block - 1)
    fail("fan_in_min " + std::to_string(c.fan_in_min) +
         " exceeds the nodes available below any operation");
  if (!(c.or_prob >= 0.0 && c.or_prob <= 1.0)) fail("or_prob must be in [0, 1]");
  if (!(c.leaf_fraction > 0.0 && c.leaf_fraction <= 1.0))
    fail("leaf_fraction must be in (0, 1]");
  if (c.size_min < 0 || c.size_min > c.size_max) fail("invalid size range");
  if (c.cost_min < 0 || c.cost_min > c.cost_max) fail("invalid cost range");
  if (!(c.budget_fraction >= 0.0) || !std::isfinite(c.budget_fraction))
    fail("budget_fraction must be finite and >= 0");
}

/// Random expression forest. Nodes are generated in blocks (one block
/// unless component_size is set); the first leaf_fraction of each block are
/// base tables, every later node gets one producer over distinct earlier
/// nodes of its block, plus with probability or_prob a second producer over
/// a different operand set. Roots are the eq-nodes nothing consumes. All
/// non-leaf nodes are candidates; expense is static with a budget of
/// budget_fraction times the total candidate size.
inline CspInstance random_forest(const GeneratorConfig& config) {
  validate(config);
  Rng rng(config.seed);
  const auto n = static_cast<std::size_t>(
      rng.between(static_cast<std::int64_t>(config.nodes_min),
                  static_cast<std::int64_t>(config.nodes_max)));
  const std::size_t block = config.component_size ? config.component_size : n;

  ForestBuilder b;
  std::vector<char> consumed(n, 0);
  double candidate_total = 0.0;
  std::vector<NodeId> pool;
  auto pick_inputs = [&](std::size_t begin, std::size_t end) {
    const std::size_t avail = end - begin;
    const std::size_t lo = std::min(config.fan_in_min, avail);
    const std::size_t hi = std::min(config.fan_in_max, avail);
    const auto k = static_cast<std::size_t>(
        rng.between(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
    std::vector<NodeId> inputs;
    while (inputs.size() < k) {
      const auto x = static_cast<NodeId>(begin + rng.below(avail));
      if (std::find(inputs.begin(), inputs.end(), x) == inputs.end())
        inputs.push_back(x);
    }
    std::sort(inputs.begin(), inputs.end());
    return inputs;
  };

  for (std::size_t start = 0; start < n; start += block) {
    const std::size_t end = std::min(n, start + block);
    const std::size_t leaves = std::max<std::size_t>(
        1, static_cast<std::size_t>(
               std::llround(config.leaf_fraction * (end - start))));
    for (std::size_t i = start; i < end; ++i) {
      const double size =
          static_cast<double>(rng.between(config.size_min, config.size_max));
      if (i < start + leaves) {
        b.add_eq("T" + std::to_string(i), size);
        continue;
      }
      const NodeId id = b.add_eq("v" + std::to_string(i), size, true);
      candidate_total += size;
      const auto inputs = pick_inputs(start, i);
      for (NodeId in : inputs) consumed[in] = 1;
      b.add_op("op" + std::to_string(i),
               static_cast<double>(rng.between(config.cost_min, config.cost_max)),
               inputs, id);
      if (config.or_prob > 0.0 && rng.bernoulli(config.or_prob)) {
        auto alt = pick_inputs(start, i);
        if (alt != inputs) {
          for (NodeId in : alt) consumed[in] = 1;
          b.add_op("op" + std::to_string(i) + "b",
                   static_cast<double>(
                       rng.between(config.cost_min, config.cost_max)),
                   std::move(alt), id);
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!consumed[i]) b.add_root(static_cast<NodeId>(i));
  Budget budget;
  budget.limit = config.budget_fraction * candidate_total;
  return CspInstance(std::move(b).build(), ExpenseModel{}, budget);
}

}  // namespace mqo

#endif  // MQO_INSTANCES_RANDOM_FOREST_HPP_
