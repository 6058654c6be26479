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

#ifndef MQO_ALGORITHMS_GENETIC_HPP_
#define MQO_ALGORITHMS_GENETIC_HPP_

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mqo/cost_model.hpp"
#include "mqo/error.hpp"
#include "mqo/expense.hpp"
#include "mqo/instance.hpp"
#include "mqo/report.hpp"
#include "mqo/rng.hpp"

namespace mqo {

/// A genetic-search genome: a view string over the candidates (in
/// inst.candidates() order) and a query-plan string holding one producer
/// index per eq-node with alternative producers (ascending eq id).
struct Individual {
  std::vector<std::uint8_t> vs;
  std::vector<std::uint32_t> qps;
  bool operator==(const Individual&) const = default;
};

/// Eq-nodes with more than one producer, ascending.
inline std::vector<NodeId> or_points(const ExpressionForest& forest) {
  std::vector<NodeId> out;
  for (const EqNode& e : forest.eq_nodes())
    if (e.producers.size() > 1) out.push_back(e.id);
  return out;
}

/// Workload cost with the selection of `ind` and every alternative point
/// forced onto the producer `ind.qps` names.
inline double plan_cost(const CspInstance& inst, const Individual& ind,
                        const std::vector<NodeId>& points) {
  const auto& forest = inst.forest();
  std::vector<std::int64_t> choice(forest.eq_count(), -1);
  for (std::size_t i = 0; i < points.size(); ++i)
    choice[points[i]] = ind.qps.at(i);
  Mask z = inst.empty_mask();
  for (std::size_t i = 0; i < inst.candidates().size(); ++i)
    z[inst.candidates()[i]] = ind.vs.at(i);
  std::vector<double> cost(forest.eq_count(), 0.0);
  for (NodeId id : forest.topo_order()) {
    const EqNode& e = forest.eq(id);
    double c = choice[id] >= 0
                   ? detail::producer_cost(forest.op(e.producers[choice[id]]), cost)
                   : detail::derivation_cost(forest, id, cost);
    if (z[id]) c = std::min(c, e.size);
    cost[id] = c;
  }
  double total = 0.0;
  for (const Root& r : forest.roots()) total += r.weight * cost[r.eq];
  return total;
}

inline Mask selection_of(const CspInstance& inst, const Individual& ind) {
  Mask z = inst.empty_mask();
  for (std::size_t i = 0; i < inst.candidates().size(); ++i)
    z[inst.candidates()[i]] = ind.vs.at(i);
  return z;
}

enum class GeneticSelection { kBenefit, kStochasticRanking };

struct GeneticParams {
  std::size_t population = 20;
  std::size_t generations = 50;
  double mutation_rate = 0.2;    // chance that an offspring gets one mutation
  double crossover_rate = 0.8;   // chance that a parent pair is recombined
  GeneticSelection selection = GeneticSelection::kBenefit;
  double ranking_p = 0.45;       // stochastic ranking: benefit-comparison odds
  bool refine = false;           // hill-climb the final best by single flips
  std::vector<Individual> initial;
};

struct GeneticScore {
  double benefit = 0.0;  // plan-fixed benefit
  double expense = 0.0;
  double fitness = 0.0;  // penalized plan-fixed benefit
};

inline GeneticScore genetic_fitness(const CspInstance& inst,
                                    const Individual& ind,
                                    const std::vector<NodeId>& points,
                                    double base_cost, double penalty) {
  GeneticScore s;
  s.benefit = base_cost - plan_cost(inst, ind, points);
  s.expense = inst.expense(selection_of(inst, ind));
  s.fitness = std::isfinite(inst.budget().limit)
                  ? penalized_benefit(s.benefit, s.expense, inst.budget().limit,
                                      penalty)
                  : s.benefit;
  return s;
}

/// Genetic search over (view string, query-plan string) genomes with
/// cut-and-swap crossover, single-position mutation, and either plain
/// fitness ranking or stochastic ranking. Returns the best feasible
/// selection by workload benefit among all evaluated genomes.
inline AlgorithmReport genetic(const CspInstance& inst,
                               const GeneticParams& params,
                               std::uint64_t seed) {
  const std::size_t pop_size =
      params.initial.empty() ? params.population : params.initial.size();
  if (pop_size < 2)
    throw ConfigurationError("genetic search needs a population of at least 2");
  if (!(params.mutation_rate >= 0.0 && params.mutation_rate <= 1.0) ||
      !(params.crossover_rate >= 0.0 && params.crossover_rate <= 1.0))
    throw ConfigurationError("mutation and crossover rates must be in [0, 1]");
  if (params.selection == GeneticSelection::kStochasticRanking &&
      !(params.ranking_p >= 0.0 && params.ranking_p <= 1.0))
    throw ConfigurationError("ranking probability must be in [0, 1]");

  detail::Stopwatch clock;
  Rng rng(seed);
  const auto& forest = inst.forest();
  const auto points = or_points(forest);
  const std::size_t nv = inst.candidates().size();
  const std::size_t nq = points.size();
  for (const Individual& ind : params.initial) {
    if (ind.vs.size() != nv || ind.qps.size() != nq)
      throw ConfigurationError("initial individual has the wrong shape");
    for (std::size_t i = 0; i < nq; ++i)
      if (ind.qps[i] >= forest.eq(points[i]).producers.size())
        throw ConfigurationError("initial individual names a missing producer");
  }
  const double base = inst.cost(inst.empty_mask());
  const double penalty = effective_penalty(inst);

  AlgorithmReport r;
  r.algo = "genetic";
  r.seed = seed;
  std::vector<NodeId> best_ids;
  double best_b = 0.0, best_e = 0.0;
  std::uint64_t evals = 0;

  struct Member {
    Individual ind;
    GeneticScore score;
  };
  auto score = [&](const Individual& ind) {
    ++evals;
    GeneticScore s = genetic_fitness(inst, ind, points, base, penalty);
    if (inst.feasible(s.expense)) {
      const Mask z = selection_of(inst, ind);
      const double b = inst.benefit(z);
      auto ids = mask_ids(z);
      if (detail::better_selection(b, s.expense, ids, best_b, best_e, best_ids)) {
        best_b = b;
        best_e = s.expense;
        best_ids = std::move(ids);
      }
    }
    return s;
  };

  std::vector<Member> pop;
  if (!params.initial.empty()) {
    for (const Individual& ind : params.initial) pop.push_back({ind, score(ind)});
  } else {
    for (std::size_t i = 0; i < pop_size; ++i) {
      Individual ind;
      ind.vs.resize(nv);
      for (auto& b : ind.vs) b = rng.bernoulli(0.5);
      ind.qps.resize(nq);
      for (std::size_t j = 0; j < nq; ++j)
        ind.qps[j] = static_cast<std::uint32_t>(
            rng.below(forest.eq(points[j]).producers.size()));
      pop.push_back({ind, score(ind)});
    }
  }

  auto mutate = [&](Individual& ind) {
    const std::size_t len = nv + nq;
    if (len == 0) return;
    const std::size_t pos = rng.below(len);
    if (pos < nv) {
      ind.vs[pos] = !ind.vs[pos];
      return;
    }
    const std::size_t j = pos - nv;
    const std::size_t alts = forest.eq(points[j]).producers.size();
    ind.qps[j] = static_cast<std::uint32_t>(
        (ind.qps[j] + 1 + rng.below(alts - 1)) % alts);
  };
  auto cut_swap = [&](auto& a, auto& b) {
    if (a.size() < 2) return;
    const std::size_t cut = 1 + rng.below(a.size() - 1);
    for (std::size_t i = cut; i < a.size(); ++i) std::swap(a[i], b[i]);
  };

  std::uint64_t swaps = 0;
  for (std::size_t g = 0; g < params.generations; ++g) {
    std::vector<Member> next = pop;
    for (std::size_t i = 0; i < pop_size; i += 2) {
      Individual a = pop[rng.below(pop_size)].ind;
      Individual b = pop[rng.below(pop_size)].ind;
      if (rng.uniform() < params.crossover_rate) {
        cut_swap(a.vs, b.vs);
        cut_swap(a.qps, b.qps);
      }
      if (rng.uniform() < params.mutation_rate) mutate(a);
      if (rng.uniform() < params.mutation_rate) mutate(b);
      next.push_back({a, score(a)});
      next.push_back({b, score(b)});
    }
    if (params.selection == GeneticSelection::kBenefit) {
      std::stable_sort(next.begin(), next.end(),
                       [](const Member& x, const Member& y) {
                         return x.score.fitness > y.score.fitness;
                       });
    } else {
      // Bubble-sort passes with the stochastic comparator until a pass
      // makes no swap, capped at one pass per element.
      for (std::size_t pass = 0; pass < next.size(); ++pass) {
        bool swapped = false;
        for (std::size_t i = 0; i + 1 < next.size(); ++i) {
          const ScoredSet x{next[i].score.benefit, next[i].score.expense};
          const ScoredSet y{next[i + 1].score.benefit, next[i + 1].score.expense};
          if (stochastic_compare(x, y, params.ranking_p, rng) > 0) {
            std::swap(next[i], next[i + 1]);
            swapped = true;
            ++swaps;
          }
        }
        if (!swapped) break;
      }
    }
    next.resize(pop_size);
    pop = std::move(next);
    r.trace.push_back({best_b, best_e});
    ++r.iterations;
  }

  if (params.refine) {
    // Best-improvement single-flip hill climbing on the fittest member.
    Member cur = *std::max_element(pop.begin(), pop.end(),
                                   [](const Member& x, const Member& y) {
                                     return x.score.fitness < y.score.fitness;
                                   });
    for (;;) {
      Member step = cur;
      for (std::size_t i = 0; i < nv; ++i) {
        Individual t = cur.ind;
        t.vs[i] = !t.vs[i];
        const GeneticScore s = score(t);
        if (s.fitness > step.score.fitness) step = {t, s};
      }
      if (!(step.score.fitness > cur.score.fitness)) break;
      cur = step;
    }
  }

  detail::settle(inst, make_mask(forest, std::span<const NodeId>(best_ids)),
                 best_b, best_e, r);
  r.counters["evaluations"] = evals;
  r.counters["ranking_swaps"] = swaps;
  r.elapsed_ns = clock.elapsed_ns();
  return r;
}

}  // namespace mqo

#endif  // MQO_ALGORITHMS_GENETIC_HPP_
