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

#ifndef MQO_MQO_HPP_
#define MQO_MQO_HPP_

#include "mqo/algorithms/astar.hpp"
#include "mqo/algorithms/exhaustive.hpp"
#include "mqo/algorithms/genetic.hpp"
#include "mqo/algorithms/greedy.hpp"
#include "mqo/algorithms/iterative_flip.hpp"
#include "mqo/algorithms/level_order.hpp"
#include "mqo/algorithms/local_search.hpp"
#include "mqo/algorithms/topk.hpp"
#include "mqo/compressed_forest.hpp"
#include "mqo/cost_model.hpp"
#include "mqo/error.hpp"
#include "mqo/expense.hpp"
#include "mqo/forest.hpp"
#include "mqo/instance.hpp"
#include "mqo/instances/fixtures.hpp"
#include "mqo/instances/knapsack.hpp"
#include "mqo/instances/random_forest.hpp"
#include "mqo/io/json.hpp"
#include "mqo/parallel.hpp"
#include "mqo/report.hpp"
#include "mqo/rng.hpp"
#include "mqo/solve.hpp"

#endif  // MQO_MQO_HPP_
