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

#ifndef MQO_TESTS_TEST_SUPPORT_HPP_
#define MQO_TESTS_TEST_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "mqo/cost_model.hpp"
#include "mqo/forest.hpp"
#include "mqo/instance.hpp"
#include "mqo/instances/random_forest.hpp"
#include "mqo/rng.hpp"

namespace mqo::testing {

inline CspInstance small_and_instance(std::uint64_t seed,
                                      std::size_t lo = 8,
                                      std::size_t hi = 16) {
  GeneratorConfig g;
  g.seed = seed;
  g.nodes_min = lo;
  g.nodes_max = hi;
  return random_forest(g);
}

inline Mask random_selection(const ExpressionForest& f, Rng& rng,
                             double p = 0.5) {
  Mask z(f.eq_count(), 0);
  for (NodeId c : f.candidates()) z[c] = rng.bernoulli(p);
  return z;
}

inline Mask all_candidates(const ExpressionForest& f) {
  Mask z(f.eq_count(), 0);
  for (NodeId c : f.candidates()) z[c] = 1;
  return z;
}

// Chain T -> n0 -> n1 -> ... with op cost 20 and shrinking sizes (floor 1).
inline ExpressionForest chain(std::size_t length, double root_weight = 1.0) {
  ForestBuilder b;
  NodeId prev = b.add_eq("T", 100);
  for (std::size_t i = 0; i < length; ++i) {
    const NodeId next =
        b.add_eq("n" + std::to_string(i), std::max(1.0, 10.0 - i), true);
    b.add_op("op" + std::to_string(i), 20, {prev}, next);
    prev = next;
  }
  b.add_root(prev, root_weight);
  return std::move(b).build();
}

}  // namespace mqo::testing

#endif  // MQO_TESTS_TEST_SUPPORT_HPP_
