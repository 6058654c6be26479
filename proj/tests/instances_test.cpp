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

#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "mqo/mqo.hpp"

namespace mqo {
namespace {

TEST(Fixtures, AllNamesBuildAndValidate) {
  for (const auto& name : fixture_names()) {
    const auto inst = fixture(name);
    EXPECT_GT(inst.forest().eq_count(), 0u) << name;
    EXPECT_FALSE(inst.candidates().empty()) << name;
    EXPECT_FALSE(inst.forest().roots().empty()) << name;
  }
  EXPECT_THROW(fixture("fig3"), InvalidArgumentError);
}

TEST(Fixtures, Fig7UnitBenefits) {
  const auto inst = fixture("fig7");
  const auto& ub = inst.costs().unit_benefit;
  EXPECT_EQ(ub[2], 30);
  EXPECT_EQ(ub[3], 64);
  EXPECT_EQ(ub[4], 224);
  EXPECT_EQ(inst.budget().limit, 30);
}

TEST(Fixtures, Fig2SharesTheAggregateOfT2) {
  const auto inst = fixture("fig2");
  const auto& f = inst.forest();
  EXPECT_EQ(f.eq_count(), 6u);
  EXPECT_EQ(f.op_count(), 4u);
  EXPECT_EQ(f.roots().size(), 4u);
  const NodeId c3 = f.eq_by_label("c3");
  EXPECT_EQ(f.parents(c3).size(), 1u);
}

TEST(Fixtures, EpsilonShiftsOperationCosts) {
  FixtureParams p;
  p.eps = 0.5;
  const auto inst = fixture("fig2", p);
  for (const OpNode& o : inst.forest().op_nodes()) EXPECT_EQ(o.cost, 0.5);
  p.eps1 = 2;
  const auto fig4 = fixture("fig4", p);
  EXPECT_EQ(fig4.forest().op(0).cost, 5);
}

TEST(Knapsack, ScaleAndLayout) {
  const KnapsackInstance k{{6, 10, 12}, {1, 2, 3}, 5};
  EXPECT_EQ(knapsack_scale(k), 6);
  const auto red = knapsack_reduction(k);
  const auto& f = red.instance.forest();
  EXPECT_EQ(red.scale, 6);
  EXPECT_EQ(red.instance.budget().limit, 30);
  ASSERT_EQ(red.item_node.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    const NodeId s = red.item_node[i];
    EXPECT_EQ(f.eq(s).size, 6 * k.weights[i]);
    EXPECT_EQ(red.instance.costs().unit_benefit[s], k.values[i]);
  }
  EXPECT_EQ(f.roots().size(), 1u);
  EXPECT_TRUE(f.is_and_forest());
}

TEST(Knapsack, ReductionMatchesDynamicProgramming) {
  const KnapsackInstance k{{6, 10, 12}, {1, 2, 3}, 5};
  EXPECT_EQ(knapsack_dp(k).value, 22);
  EXPECT_EQ(knapsack_dp(k).items, (std::vector<std::size_t>{1, 2}));
  const auto red = knapsack_reduction(k);
  const auto r = exhaustive(red.instance);
  EXPECT_EQ(r.benefit, 22);
  EXPECT_EQ(r.selection,
            (std::vector<NodeId>{red.item_node[1], red.item_node[2]}));
}

TEST(Knapsack, NothingFitsAndEverythingFits) {
  const KnapsackInstance none{{5}, {3}, 2};
  EXPECT_EQ(knapsack_dp(none).value, 0);
  EXPECT_EQ(exhaustive(knapsack_reduction(none).instance).benefit, 0);
  const KnapsackInstance all{{1, 2, 3}, {1, 1, 1}, 3};
  EXPECT_EQ(knapsack_dp(all).value, 6);
  EXPECT_EQ(exhaustive(knapsack_reduction(all).instance).benefit, 6);
}

TEST(Knapsack, RejectsBadInput) {
  EXPECT_THROW(knapsack_reduction({{}, {}, 1}), InvalidArgumentError);
  EXPECT_THROW(knapsack_reduction({{1}, {0}, 1}), InvalidArgumentError);
  EXPECT_THROW(knapsack_reduction({{1, 2}, {1}, 1}), InvalidArgumentError);
  EXPECT_THROW(knapsack_dp({{1}, {1.5}, 3}), InvalidArgumentError);
  EXPECT_THROW(knapsack_dp({{1}, {1}, 1e9}, 1.0, 1000), ResourceLimitError);
}

TEST(RandomForest, SameSeedSameInstance) {
  GeneratorConfig g;
  g.seed = 7;
  g.nodes_min = g.nodes_max = 12;
  const auto a = io::instance_text(random_forest(g));
  const auto b = io::instance_text(random_forest(g));
  EXPECT_EQ(a, b);
  g.seed = 8;
  EXPECT_NE(a, io::instance_text(random_forest(g)));
}

TEST(RandomForest, GeneratedInstancesAreWellFormed) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    GeneratorConfig g;
    g.seed = seed;
    g.or_prob = seed % 2 ? 0.3 : 0.0;
    const auto inst = random_forest(g);
    const auto& f = inst.forest();
    ASSERT_GE(f.eq_count(), g.nodes_min);
    ASSERT_LE(f.eq_count(), g.nodes_max);
    ASSERT_FALSE(f.roots().empty());
    if (g.or_prob == 0.0) {
      ASSERT_TRUE(f.is_and_forest());
    }
    for (const EqNode& e : f.eq_nodes()) {
      ASSERT_EQ(e.candidate, !e.producers.empty());
      ASSERT_GE(e.size, g.size_min);
      ASSERT_LE(e.size, g.size_max);
    }
    for (const OpNode& o : f.op_nodes()) {
      ASSERT_GE(o.inputs.size(), g.fan_in_min);
      ASSERT_LE(o.inputs.size(), g.fan_in_max);
      ASSERT_EQ(std::set<NodeId>(o.inputs.begin(), o.inputs.end()).size(),
                o.inputs.size());
    }
  }
}

TEST(RandomForest, ComponentsStayIndependent) {
  GeneratorConfig g;
  g.nodes_min = g.nodes_max = 100;
  g.component_size = 10;
  g.seed = 3;
  const auto inst = random_forest(g);
  for (const OpNode& o : inst.forest().op_nodes())
    for (NodeId in : o.inputs) EXPECT_EQ(in / 10, o.output / 10);
}

TEST(RandomForest, RejectsInvalidConfigs) {
  GeneratorConfig g;
  g.nodes_min = 0;
  EXPECT_THROW(random_forest(g), ConfigurationError);
  g = {};
  g.fan_in_min = 3;
  g.fan_in_max = 2;
  EXPECT_THROW(random_forest(g), ConfigurationError);
  g = {};
  g.or_prob = 1.5;
  EXPECT_THROW(random_forest(g), ConfigurationError);
  g = {};
  g.leaf_fraction = 0;
  EXPECT_THROW(random_forest(g), ConfigurationError);
}

}  // namespace
}  // namespace mqo
