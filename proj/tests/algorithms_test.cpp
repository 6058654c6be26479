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

#include <algorithm>
#include <vector>

#include "mqo/mqo.hpp"
#include "mqo_oracle/oracle.hpp"
#include "test_support.hpp"

namespace mqo {
namespace {

std::vector<std::string> labels(const CspInstance& inst, const AlgorithmReport& r) {
  std::vector<std::string> out;
  for (NodeId id : r.selection) out.push_back(inst.forest().eq(id).label);
  return out;
}

CspInstance with_budget(CspInstance inst, double limit) {
  Budget b = inst.budget();
  b.limit = limit;
  inst.set_budget(b);
  return inst;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

const std::vector<std::string> kPair{"c1", "c2"};

// ---------------------------------------------------------------- exhaustive

TEST(Exhaustive, FindsTheFig7Optimum) {
  const auto inst = fixture("fig7");
  const auto r = exhaustive(inst);
  verify_report(inst, r);
  EXPECT_EQ(r.benefit, 94);
  EXPECT_EQ(r.expense, 30);
  EXPECT_EQ(labels(inst, r), kPair);
  EXPECT_EQ(r.counters.at("subsets"), 4u);  // c3 never fits
}

TEST(Exhaustive, ZeroBudgetSelectsNothing) {
  const auto r = exhaustive(with_budget(fixture("fig7"), 0));
  EXPECT_TRUE(r.selection.empty());
  EXPECT_EQ(r.benefit, 0);
  EXPECT_TRUE(r.feasible);
}

TEST(Exhaustive, BreaksTiesByExpenseThenIds) {
  // Two parallel queries; a and b save the same, b is cheaper.
  ForestBuilder fb;
  const NodeId t = fb.add_eq("T", 10);
  const NodeId a = fb.add_eq("a", 6, true);
  const NodeId b = fb.add_eq("b", 4, true);
  fb.add_op("fa", 6, {t}, a);
  fb.add_op("fb", 4, {t}, b);
  fb.add_root(a);
  fb.add_root(b);
  Budget budget;
  budget.limit = 6;
  const CspInstance inst(std::move(fb).build(), ExpenseModel{}, budget);
  // a saves 16 - 6 = 10, b saves 14 - 4 = 10.
  const auto r = exhaustive(inst);
  EXPECT_EQ(r.selection, std::vector<NodeId>{b});
  EXPECT_EQ(r.benefit, 10);
}

TEST(Exhaustive, HonoursTheCandidateCap) {
  const auto inst = testing::small_and_instance(1, 14, 14);
  ExhaustiveParams p;
  p.cap = 3;
  EXPECT_THROW(exhaustive(with_budget(inst, 1e9), p), ResourceLimitError);
}

TEST(Exhaustive, ResultDoesNotDependOnThreadCount) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = testing::small_and_instance(seed, 16, 22);
    const auto one = exhaustive(inst, {}, 1);
    const auto many = exhaustive(inst, {}, 8);
    EXPECT_EQ(one.selection, many.selection);
    EXPECT_EQ(one.benefit, many.benefit);
    EXPECT_EQ(one.counters, many.counters);
  }
}

// ---------------------------------------------------------------------- topk

TEST(Topk, FrequencyPrefersTheSharedAggregate) {
  const auto inst = fixture("fig2");
  const auto r = topk(inst, TopkVariant::kFreq, 1);
  EXPECT_EQ(labels(inst, r), std::vector<std::string>{"c3"});
  EXPECT_EQ(topk_scores(inst, TopkVariant::kFreq),
            (std::vector<double>{1, 1, 2, 1}));
}

TEST(Topk, ZeroKSelectsNothing) {
  for (auto v : {TopkVariant::kFreq, TopkVariant::kUtility,
                 TopkVariant::kTotalUtility, TopkVariant::kNormTotalUtility})
    EXPECT_TRUE(topk(fixture("fig7"), v, 0).selection.empty());
}

TEST(Topk, NormalizedTotalUtilityOnFig7) {
  const auto inst = fixture("fig7");
  // Benefit per unit of size: c1 60/10, c2 64/20, c3 224/100.
  const auto s = topk_scores(inst, TopkVariant::kNormTotalUtility);
  EXPECT_EQ(s, (std::vector<double>{6.0, 3.2, 2.24}));
  const auto r = topk(inst, TopkVariant::kNormTotalUtility, 1);
  EXPECT_EQ(labels(inst, r), std::vector<std::string>{"c1"});
  EXPECT_EQ(labels(inst, topk(inst, TopkVariant::kNormTotalUtility, 2)), kPair);
}

TEST(Topk, DropsTailItemsUntilFeasible) {
  const auto inst = fixture("fig7");
  // Ranked c3, c2, c1 by total utility; c3 alone already exceeds 30.
  const auto r = topk(inst, TopkVariant::kTotalUtility, 3);
  EXPECT_TRUE(r.selection.empty());
  const auto loose = topk(with_budget(inst, 120), TopkVariant::kTotalUtility, 3);
  EXPECT_EQ(labels(inst, loose), (std::vector<std::string>{"c2", "c3"}));
  EXPECT_EQ(topk_scores(inst, TopkVariant::kUtility),
            (std::vector<double>{60, 64, 224}));
}

// -------------------------------------------------------------------- greedy

TEST(Greedy, ReachesTheFig7Optimum) {
  const auto inst = fixture("fig7");
  const auto r = greedy(inst);
  verify_report(inst, r);
  EXPECT_EQ(r.benefit, 94);
  EXPECT_EQ(labels(inst, r), kPair);
  // c1 first (60 per 10), then c2 (34 more for 20).
  ASSERT_EQ(r.trace.size(), 3u);
  EXPECT_EQ(r.trace[1].benefit, 60);
  EXPECT_EQ(r.trace[1].expense, 10);
  EXPECT_EQ(r.trace[2].benefit, 94);
}

TEST(Greedy, ZeroBudgetSelectsNothing) {
  const auto r = greedy(with_budget(fixture("fig7"), 0));
  EXPECT_TRUE(r.selection.empty());
  EXPECT_EQ(r.benefit, 0);
}

TEST(Greedy, FreeCandidatesAreTakenWhenTheyHelp) {
  ForestBuilder fb;
  const NodeId t = fb.add_eq("T", 10);
  const NodeId a = fb.add_eq("a", 0, true);
  const NodeId b = fb.add_eq("b", 0, true);
  fb.add_op("fa", 5, {t}, a);
  fb.add_op("fb", 5, {a}, b);
  fb.add_root(b);
  Budget budget;
  budget.limit = 0;
  const CspInstance inst(std::move(fb).build(), ExpenseModel{}, budget);
  const auto r = greedy(inst);
  EXPECT_EQ(r.benefit, 20);
  EXPECT_TRUE(r.feasible);
}

TEST(Greedy, StaysFeasibleOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto inst = testing::small_and_instance(seed);
    const auto g = greedy(inst);
    verify_report(inst, g);
    EXPECT_TRUE(g.feasible);
    EXPECT_LE(g.benefit, exhaustive(inst).benefit + 1e-9);
  }
}

TEST(GreedyMk, DegenerateSeedSizes) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = testing::small_and_instance(seed, 6, 10);
    GreedyMkParams none;
    none.k = 0;
    const auto g0 = greedy_mk(inst, none);
    const auto g = greedy(inst);
    EXPECT_EQ(g0.selection, g.selection);
    EXPECT_EQ(g0.benefit, g.benefit);

    GreedyMkParams all;
    all.k = inst.candidates().size();
    const auto full = greedy_mk(inst, all);
    const auto ex = exhaustive(inst);
    EXPECT_EQ(full.selection, ex.selection);
    EXPECT_EQ(full.benefit, ex.benefit);
  }
}

TEST(GreedyMk, SeedIsTheBestSmallSubset) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = testing::small_and_instance(seed);
    const auto r = greedy_mk(inst);  // k = 2
    verify_report(inst, r);
    // The extension starts from the best feasible set of at most two
    // candidates, so it can never end below it.
    double best_pair = 0;
    const auto& cands = inst.candidates();
    for (std::size_t i = 0; i < cands.size(); ++i)
      for (std::size_t j = i; j < cands.size(); ++j) {
        const Mask z = make_mask(inst.forest(), {cands[i], cands[j]});
        if (inst.feasible(inst.expense(z)))
          best_pair = std::max(best_pair, inst.benefit(z));
      }
    EXPECT_GE(r.benefit, best_pair - 1e-9);
  }
}

TEST(GreedyMk, ValidatesArguments) {
  const auto inst = testing::small_and_instance(3, 12, 12);
  GreedyMkParams big;
  big.k = inst.candidates().size() + 1;
  EXPECT_THROW(greedy_mk(inst, big), InvalidArgumentError);
  GreedyMkParams capped;
  capped.k = 3;
  capped.m_cap = 10;
  EXPECT_THROW(greedy_mk(with_budget(inst, 1e9), capped), ResourceLimitError);
}

// --------------------------------------------------------------- level order

TEST(LevelOrder, KeepsTheMostValuableLevelPerQuery) {
  const auto inst = fixture("fig7");
  // Levels: c3 (224) at depth 0, c2 (64) at 1, c1 (60) at 2.
  const Mask keep = level_order_filter(inst.forest());
  EXPECT_EQ(mask_ids(keep), std::vector<NodeId>{4});
}

TEST(LevelOrder, SingleNodeAndChains) {
  ForestBuilder fb;
  const NodeId only = fb.add_eq("only", 3, true);
  fb.add_root(only);
  EXPECT_EQ(mask_ids(level_order_filter(std::move(fb).build())),
            std::vector<NodeId>{only});
  for (std::size_t len = 1; len < 6; ++len)
    EXPECT_EQ(mask_ids(level_order_filter(testing::chain(len))).size(), 1u);
}

TEST(LevelOrder, RestrictsCandidatesWhenRequested) {
  const auto inst = fixture("fig7");
  AlgorithmConfig cfg;
  cfg.algo = "exhaustive";
  cfg.level_order = true;
  const auto r = run_algorithm(with_budget(inst, 1000), cfg);
  EXPECT_EQ(labels(inst, r), std::vector<std::string>{"c3"});
}

// --------------------------------------------------------------------- astar

TEST(AStar, ReachesTheFig7Optimum) {
  const auto inst = fixture("fig7");
  const auto r = astar(inst);
  verify_report(inst, r);
  EXPECT_EQ(r.benefit, 94);
  EXPECT_EQ(labels(inst, r), kPair);
}

TEST(AStar, SingleCandidate) {
  const auto f = testing::chain(1);
  const CspInstance inst(f);
  const auto r = astar(inst);
  EXPECT_EQ(r.selection, std::vector<NodeId>{1});
  EXPECT_EQ(r.benefit, exhaustive(inst).benefit);
}

TEST(AStar, MatchesExhaustiveAndPrunes) {
  int pruned = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = testing::small_and_instance(500 + seed, 10, 20);
    if (inst.candidates().size() > 14) continue;
    ++total;
    const auto a = astar(inst);
    const auto e = exhaustive(inst);
    EXPECT_EQ(a.selection, e.selection) << "seed " << seed;
    EXPECT_EQ(a.benefit, e.benefit);
    const auto subsets = a.counters.at("subsets");
    EXPECT_LE(a.counters.at("expanded_states"), 2 * subsets - 1);
    pruned += a.counters.at("expanded_states") < subsets;
  }
  EXPECT_GE(pruned, 0.9 * total);
}

TEST(AStar, MatchesExhaustiveUnderOtherExpenseModels) {
  for (const char* name : {"fig4", "fig6", "fig5", "fig2"}) {
    const auto inst = with_budget(fixture(name), 20);
    const auto a = astar(inst);
    const auto e = exhaustive(inst);
    EXPECT_EQ(a.selection, e.selection) << name;
    EXPECT_EQ(a.benefit, e.benefit) << name;
  }
}

TEST(AStar, HonoursTheCap) {
  const auto inst = testing::small_and_instance(9, 14, 14);
  AStarParams p;
  p.cap = 2;
  EXPECT_THROW(astar(with_budget(inst, 1e9), p), ResourceLimitError);
}

// ------------------------------------------------------------ random search

TEST(RandomSampling, OnlyFeasibleOutcomesOnFig7) {
  const auto inst = fixture("fig7");
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = random_sampling(inst, 100, seed);
    verify_report(inst, r);
    EXPECT_TRUE(r.benefit == 0 || r.benefit == 60 || r.benefit == 64 ||
                r.benefit == 94);
  }
  const auto one = random_sampling(inst, 1, 5);
  EXPECT_EQ(one.iterations, 1u);
  EXPECT_TRUE(one.feasible);
  EXPECT_THROW(random_sampling(inst, 0, 1), InvalidArgumentError);
}

TEST(RandomSampling, NothingFitsMeansNothingSelected) {
  const auto inst = with_budget(fixture("fig7"), 5);
  const auto r = random_sampling(inst, 50, 3);
  EXPECT_TRUE(r.selection.empty());
  EXPECT_EQ(r.benefit, 0);
}

TEST(LocalSearch, IterativeImprovementOnFig7) {
  const auto inst = fixture("fig7");
  LocalSearchParams p;
  p.restarts = 1;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = local_search(inst, LocalSearchMode::kIterativeImprovement, p, seed);
    verify_report(inst, r);
    EXPECT_GE(r.benefit, 64);
  }
}

TEST(LocalSearch, ZeroTemperatureAnnealingIsIterativeImprovement) {
  LocalSearchParams p;
  p.t0 = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = testing::small_and_instance(seed);
    for (auto nb : {Neighborhood::kAddSwapRemove, Neighborhood::kSingleFlip}) {
      p.neighborhood = nb;
      const auto ii = local_search(inst, LocalSearchMode::kIterativeImprovement, p, seed);
      const auto sa = local_search(inst, LocalSearchMode::kSimulatedAnnealing, p, seed);
      ASSERT_EQ(ii.trace.size(), sa.trace.size());
      for (std::size_t i = 0; i < ii.trace.size(); ++i) {
        EXPECT_EQ(ii.trace[i].benefit, sa.trace[i].benefit);
        EXPECT_EQ(ii.trace[i].expense, sa.trace[i].expense);
      }
      EXPECT_EQ(ii.selection, sa.selection);
    }
  }
}

TEST(LocalSearch, TwoPhaseBeatsRandomSamplingAtEqualEvaluations) {
  std::vector<double> two_phase, sampled;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = testing::small_and_instance(100 + seed);
    LocalSearchParams p;
    p.max_evals = 300;
    const auto a = local_search(inst, LocalSearchMode::kTwoPhase, p, seed);
    const auto b = random_sampling(inst, a.counters.at("evaluations"), seed);
    verify_report(inst, a);
    two_phase.push_back(a.benefit);
    sampled.push_back(b.benefit);
  }
  EXPECT_GE(median(two_phase), median(sampled));
}

TEST(LocalSearch, RejectsInvalidSchedules) {
  const auto inst = fixture("fig7");
  LocalSearchParams p;
  p.alpha = 1.0;
  EXPECT_THROW(local_search(inst, LocalSearchMode::kSimulatedAnnealing, p, 0),
               ConfigurationError);
  p.alpha = 0.0;
  EXPECT_THROW(local_search(inst, LocalSearchMode::kSimulatedAnnealing, p, 0),
               ConfigurationError);
  EXPECT_THROW(parse_local_search_mode("tabu"), ConfigurationError);
}

TEST(LocalSearch, RespectsTheEvaluationBudget) {
  const auto inst = testing::small_and_instance(4);
  LocalSearchParams p;
  p.max_evals = 77;
  p.restarts = 1000;
  for (auto m : {LocalSearchMode::kIterativeImprovement,
                 LocalSearchMode::kSimulatedAnnealing, LocalSearchMode::kTwoPhase})
    EXPECT_LE(local_search(inst, m, p, 1).counters.at("evaluations"), 77u);
}

// ------------------------------------------------------------------- genetic

TEST(Genetic, IdenticalPopulationWithoutVariationIsAFixedPoint) {
  const auto inst = fixture("fig7");
  GeneticParams p;
  p.mutation_rate = 0;
  p.crossover_rate = 0;
  const Individual ind{{1, 1, 0}, {}};
  p.initial.assign(6, ind);
  const auto r = genetic(inst, p, 11);
  EXPECT_EQ(labels(inst, r), kPair);
  EXPECT_EQ(r.benefit, 94);
}

TEST(Genetic, FindsTheFig7Optimum) {
  const auto inst = fixture("fig7");
  GeneticParams p;
  p.generations = 50;
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto r = genetic(inst, p, seed);
    verify_report(inst, r);
    hits += r.benefit == 94;
  }
  EXPECT_GE(hits, 4);
}

TEST(Genetic, PlanStringSelectsAmongAlternatives) {
  const auto inst = fixture("fig5");
  const auto points = or_points(inst.forest());
  ASSERT_EQ(points, std::vector<NodeId>{inst.forest().eq_by_label("q1")});
  const double base = inst.cost(inst.empty_mask());
  const double r = effective_penalty(inst);
  // Candidates in id order: T1xT2, T2xT3. Store T2xT3.
  const Individual first_plan{{0, 1}, {0}};
  const Individual second_plan{{0, 1}, {1}};
  EXPECT_EQ(genetic_fitness(inst, first_plan, points, base, r).fitness, 32);
  EXPECT_EQ(genetic_fitness(inst, second_plan, points, base, r).fitness, 54);
  GeneticParams p;
  const auto best = genetic(inst, p, 2);
  EXPECT_EQ(best.benefit, 54);
}

TEST(Genetic, StochasticRankingRunsAndValidates) {
  const auto inst = fixture("fig7");
  GeneticParams p;
  p.selection = GeneticSelection::kStochasticRanking;
  const auto r = genetic(inst, p, 3);
  verify_report(inst, r);
  EXPECT_GT(r.counters.at("ranking_swaps"), 0u);
  p.ranking_p = 2;
  EXPECT_THROW(genetic(inst, p, 3), ConfigurationError);
  GeneticParams tiny;
  tiny.population = 1;
  EXPECT_THROW(genetic(inst, tiny, 3), ConfigurationError);
}

TEST(Genetic, RefinementNeverHurts) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = testing::small_and_instance(seed);
    GeneticParams p;
    p.generations = 5;
    const auto plain = genetic(inst, p, seed);
    p.refine = true;
    const auto refined = genetic(inst, p, seed);
    EXPECT_GE(refined.benefit, plain.benefit);
  }
}

// ------------------------------------------------------------ iterative flip

TEST(IterativeFlip, FindsTheFig7Optimum) {
  const auto inst = fixture("fig7");
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto r = iterative_flip(inst, 200, seed);
    verify_report(inst, r);
    EXPECT_EQ(r.benefit, 94);
    EXPECT_EQ(labels(inst, r), kPair);
  }
}

TEST(IterativeFlip, ZeroProbabilitiesSelectNothing) {
  FlipParams p;
  p.p_init = 0;
  const auto r = iterative_flip(fixture("fig7"), 1, 0, p);
  EXPECT_TRUE(r.selection.empty());
  EXPECT_EQ(r.benefit, 0);
}

TEST(IterativeFlip, CompetitiveWithGreedy) {
  int wins = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = testing::small_and_instance(seed);
    const auto r = iterative_flip(inst, 500, seed);
    verify_report(inst, r);
    ++total;
    wins += r.benefit >= greedy(inst).benefit - 1e-9;
  }
  EXPECT_GE(wins, 0.8 * total);
}

TEST(IterativeFlip, RequiresAnAndForest) {
  EXPECT_THROW(iterative_flip(fixture("fig5"), 10, 0), UnsupportedStructureError);
  EXPECT_THROW(iterative_flip(fixture("fig7"), 0, 0), InvalidArgumentError);
  FlipParams bad;
  bad.p_min = 0.9;
  bad.p_max = 0.1;
  EXPECT_THROW(iterative_flip(fixture("fig7"), 1, 0, bad), ConfigurationError);
}

TEST(IterativeFlip, UsesTheSuppliedPolicy) {
  struct Frozen : FlipPolicy {
    int calls = 0;
    void update(std::span<const double>, std::vector<double>&,
                std::uint64_t) override {
      ++calls;
    }
  } policy;
  FlipParams p;
  p.p_init = 1.0;
  const auto inst = fixture("fig7");
  const auto r = iterative_flip(inst, 7, 0, p, &policy);
  EXPECT_EQ(policy.calls, 7);
  // Everything is drawn every time; the repair drops c3 (lowest utility per
  // unit of expense) and keeps the optimum.
  EXPECT_EQ(labels(inst, r), kPair);
  EXPECT_EQ(r.counters.at("repair_drops"), 7u);
}

// ----------------------------------------------------------------- dispatch

TEST(Dispatch, EveryAlgorithmIsDeterministicAndSelfConsistent) {
  const auto inst = testing::small_and_instance(21);
  for (const auto& name : algorithm_names()) {
    AlgorithmConfig cfg;
    cfg.algo = name;
    cfg.seed = 9;
    const auto a = run_algorithm(inst, cfg, 1);
    const auto b = run_algorithm(inst, cfg, 8);
    verify_report(inst, a);
    EXPECT_EQ(a.selection, b.selection) << name;
    EXPECT_EQ(a.benefit, b.benefit) << name;
    EXPECT_EQ(a.iterations, b.iterations) << name;
    EXPECT_EQ(a.counters, b.counters) << name;
    EXPECT_EQ(a.trace.size(), b.trace.size()) << name;
    EXPECT_EQ(a.seed, 9u);
  }
}

TEST(Dispatch, RejectsUnknownNamesAndParameters) {
  const auto inst = fixture("fig7");
  AlgorithmConfig cfg;
  cfg.algo = "magic";
  EXPECT_THROW(run_algorithm(inst, cfg), ConfigurationError);
  cfg.algo = "greedy";
  cfg.params = {{"speed", 3}};
  EXPECT_THROW(run_algorithm(inst, cfg), ConfigurationError);
  cfg.algo = "sa";
  cfg.params = {{"alpha", "fast"}};
  EXPECT_THROW(run_algorithm(inst, cfg), ConfigurationError);
  cfg.params = {{"alpha", 0.5}, {"t0", 0}};
  EXPECT_NO_THROW(run_algorithm(inst, cfg));
  EXPECT_THROW(parse_algorithm_config(nlohmann::ordered_json{{"algo", 3}}),
               ConfigurationError);
  const auto parsed = parse_algorithm_config(
      {{"algo", "topk"}, {"seed", 4}, {"params", {{"variant", "freq"}, {"k", 1}}}});
  EXPECT_EQ(parsed.algo, "topk");
  EXPECT_EQ(parsed.seed, 4u);
  EXPECT_EQ(run_algorithm(fixture("fig2"), parsed).selection.size(), 1u);
}

}  // namespace
}  // namespace mqo
