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

#include <cmath>
#include <vector>

#include "mqo/mqo.hpp"
#include "mqo_oracle/oracle.hpp"
#include "test_support.hpp"

namespace mqo {
namespace {

TEST(BruteForce, Fig7HasAUniqueOptimum) {
  const auto inst = fixture("fig7");
  const auto r = oracle::brute_force_select(inst);
  EXPECT_EQ(r.optimum, 94);
  ASSERT_EQ(r.selections.size(), 1u);
  EXPECT_EQ(r.selections[0], (std::vector<NodeId>{2, 3}));
  EXPECT_EQ(r.evaluations, 8u);
}

TEST(BruteForce, UnlimitedBudgetSelectsEverything) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto inst = testing::small_and_instance(seed);
    inst.set_budget(Budget{});
    const auto r = oracle::brute_force_select(inst);
    const Mask all = testing::all_candidates(inst.forest());
    EXPECT_NEAR(r.optimum, oracle::recursive_benefit(inst.forest(), all), 1e-9);
  }
}

TEST(BruteForce, AgreesWithKnapsackDp) {
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    KnapsackInstance k;
    double total = 0;
    for (int i = 0; i < 10; ++i) {
      k.values.push_back(static_cast<double>(rng.between(1, 30)));
      k.weights.push_back(static_cast<double>(rng.between(1, 10)));
      total += k.weights.back();
    }
    k.capacity = std::floor(total / 2);
    const auto red = knapsack_reduction(k);
    EXPECT_EQ(oracle::brute_force_select(red.instance).optimum,
              knapsack_dp(k).value);
  }
}

TEST(BruteForce, HonoursTheCap) {
  EXPECT_THROW(oracle::brute_force_select(fixture("fig7"), 2), ResourceLimitError);
}

TEST(RecursiveCost, MatchesTheMemoizedModel) {
  Rng rng(5);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GeneratorConfig g;
    g.seed = seed;
    g.or_prob = 0.3;
    const auto inst = random_forest(g);
    const Mask z = testing::random_selection(inst.forest(), rng);
    EXPECT_NEAR(oracle::recursive_benefit(inst.forest(), z), inst.benefit(z), 1e-9);
  }
}

TEST(Flows, Fig7PairIsReusedOnceEach) {
  const auto inst = fixture("fig7");
  const Mask z = make_mask(inst.forest(), std::vector<NodeId>{2, 3});
  const auto counts = oracle::enumerate_flows(inst.forest(), z);
  EXPECT_EQ(counts, (std::vector<double>{0, 0, 1, 1, 0}));
}

TEST(Flows, EmptySelectionHasNoReuse) {
  const auto inst = fixture("fig8");
  const auto counts = oracle::enumerate_flows(inst.forest(), inst.empty_mask());
  for (double c : counts) EXPECT_EQ(c, 0);
}

TEST(Flows, RootWeightMultipliesFlows) {
  const auto f = testing::chain(1, 3.0);
  const Mask z = make_mask(f, std::vector<NodeId>{1});
  EXPECT_EQ(oracle::enumerate_flows(f, z)[1], 3);
}

TEST(Flows, MatchReuseOracleCounts) {
  Rng rng(17);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = testing::small_and_instance(seed, 6, 12);
    for (int k = 0; k < 5; ++k) {
      const Mask z = testing::random_selection(inst.forest(), rng);
      const auto s = reuse_oracle(inst.forest(), inst.costs(), z);
      EXPECT_EQ(s.n_reuses, oracle::enumerate_flows(inst.forest(), z));
    }
  }
}

TEST(Flows, RejectAlternativesAndRunawayUnfolding) {
  const auto fig5 = fixture("fig5");
  EXPECT_THROW(oracle::enumerate_flows(fig5.forest(), fig5.empty_mask()),
               UnsupportedStructureError);
  const auto inst = testing::small_and_instance(1, 12, 12);
  EXPECT_THROW(oracle::enumerate_flows(inst.forest(), inst.empty_mask(), 1),
               ResourceLimitError);
}

// Nothing an algorithm reports may beat the exhaustive reference.
TEST(Soundness, NoAlgorithmExceedsTheOptimum) {
  std::vector<CspInstance> suite;
  for (const auto& name : fixture_names()) suite.push_back(fixture(name));
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    suite.push_back(testing::small_and_instance(seed));
    GeneratorConfig g;
    g.seed = seed;
    g.or_prob = 0.3;
    suite.push_back(random_forest(g));
  }
  for (const auto& inst : suite) {
    const double opt = oracle::brute_force_select(inst).optimum;
    for (const auto& name : algorithm_names()) {
      AlgorithmConfig cfg;
      cfg.algo = name;
      cfg.seed = 1;
      AlgorithmReport r;
      try {
        r = run_algorithm(inst, cfg);
      } catch (const UnsupportedStructureError&) {
        continue;
      }
      verify_report(inst, r);
      EXPECT_LE(r.benefit, opt + 1e-9) << name;
      EXPECT_TRUE(r.feasible) << name;
    }
  }
}

}  // namespace
}  // namespace mqo
