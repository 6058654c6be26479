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

#ifndef MQO_INSTANCES_KNAPSACK_HPP_
#define MQO_INSTANCES_KNAPSACK_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "mqo/error.hpp"
#include "mqo/expense.hpp"
#include "mqo/forest.hpp"
#include "mqo/instance.hpp"

namespace mqo {

struct KnapsackInstance {
  std::vector<double> values;
  std::vector<double> weights;
  double capacity = 0.0;
};

inline void validate(const KnapsackInstance& k) {
  if (k.values.empty() || k.values.size() != k.weights.size())
    throw InvalidArgumentError(
        "knapsack needs at least one item and as many weights as values");
  for (std::size_t i = 0; i < k.values.size(); ++i)
    if (!(k.values[i] > 0.0) || !std::isfinite(k.values[i]) ||
        !(k.weights[i] > 0.0) || !std::isfinite(k.weights[i]))
      throw InvalidArgumentError("knapsack item " + std::to_string(i) +
                                 " must have positive finite value and weight");
  if (!(k.capacity >= 0.0) || !std::isfinite(k.capacity))
    throw InvalidArgumentError("knapsack capacity must be finite and >= 0");
}

/// Smallest integer s with s * min(w)^2 > W, so that every scaled join of
/// two or more filtered tables is larger than the scaled capacity.
inline double knapsack_scale(const KnapsackInstance& k) {
  const double w = *std::min_element(k.weights.begin(), k.weights.end());
  return std::floor(k.capacity / (w * w)) + 1.0;
}

struct KnapsackReduction {
  CspInstance instance;
  std::vector<NodeId> item_node;  // eq id of the filtered table of item i
  double scale = 1.0;
};

/// Encodes a 0/1 knapsack as one query joining n filtered tables
/// left-deep. Table T_i has size s*w_i + v_i, its filter output has size
/// s*w_i at cost 0, so storing it saves exactly v_i. Joins cost 0 and are
/// as large as the product of their inputs, which never fits the budget
/// s*W. Tables are not candidates; filter and join outputs are.
inline KnapsackReduction knapsack_reduction(const KnapsackInstance& k) {
  validate(k);
  const double s = knapsack_scale(k);
  const std::size_t n = k.values.size();
  ForestBuilder b;
  KnapsackReduction out;
  out.scale = s;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string idx = std::to_string(i + 1);
    const NodeId t = b.add_eq("T" + idx, s * k.weights[i] + k.values[i]);
    const NodeId f = b.add_eq("s" + idx, s * k.weights[i], true);
    b.add_op("filter" + idx, 0.0, {t}, f);
    out.item_node.push_back(f);
  }
  NodeId acc = out.item_node[0];
  for (std::size_t i = 1; i < n; ++i) {
    const NodeId next = out.item_node[i];
    const NodeId j = b.add_eq("J" + std::to_string(i),
                              b.eq_size(acc) * b.eq_size(next), true);
    b.add_op("join" + std::to_string(i), 0.0, {acc, next}, j);
    acc = j;
  }
  b.add_root(acc);
  Budget budget;
  budget.limit = s * k.capacity;
  out.instance = CspInstance(std::move(b).build(), ExpenseModel{}, budget);
  return out;
}

struct KnapsackSolution {
  double value = 0.0;
  std::vector<std::size_t> items;  // ascending
};

/// Exact 0/1 knapsack by dynamic programming over weights discretized at
/// `resolution`. Every weight and the capacity must be (within 1e-9)
/// multiples of it. When several item sets are optimal, the one returned is
/// deterministic but otherwise arbitrary.
inline KnapsackSolution knapsack_dp(const KnapsackInstance& k,
                                    double resolution = 1.0,
                                    std::uint64_t slot_cap = 10'000'000) {
  validate(k);
  if (!(resolution > 0.0))
    throw InvalidArgumentError("knapsack resolution must be positive");
  auto units = [&](double x, const char* what) {
    const double u = x / resolution;
    const double r = std::round(u);
    if (std::fabs(u - r) > 1e-9 * std::max(1.0, std::fabs(u)))
      throw InvalidArgumentError(std::string(what) +
                                 " is not a multiple of the resolution");
    if (r > static_cast<double>(slot_cap))
      throw ResourceLimitError("knapsack DP would need more than " +
                               std::to_string(slot_cap) + " weight slots");
    return static_cast<std::size_t>(r);
  };
  const std::size_t n = k.values.size();
  const std::size_t cap = units(k.capacity, "capacity");
  if ((cap + 1) * n > 10 * slot_cap)
    throw ResourceLimitError("knapsack DP table too large");
  std::vector<std::size_t> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = units(k.weights[i], "weight");

  std::vector<double> best(cap + 1, 0.0);
  std::vector<std::vector<bool>> take(n, std::vector<bool>(cap + 1, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = cap + 1; c-- > w[i];) {
      const double v = best[c - w[i]] + k.values[i];
      if (v > best[c]) {
        best[c] = v;
        take[i][c] = true;
      }
    }
  KnapsackSolution sol;
  sol.value = best[cap];
  std::size_t c = cap;
  for (std::size_t i = n; i-- > 0;)
    if (take[i][c]) {
      sol.items.push_back(i);
      c -= w[i];
    }
  std::reverse(sol.items.begin(), sol.items.end());
  return sol;
}

}  // namespace mqo

#endif  // MQO_INSTANCES_KNAPSACK_HPP_
