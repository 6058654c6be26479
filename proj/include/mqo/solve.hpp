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

#ifndef MQO_SOLVE_HPP_
#define MQO_SOLVE_HPP_

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mqo/algorithms/astar.hpp"
#include "mqo/algorithms/exhaustive.hpp"
#include "mqo/algorithms/genetic.hpp"
#include "mqo/algorithms/greedy.hpp"
#include "mqo/algorithms/iterative_flip.hpp"
#include "mqo/algorithms/level_order.hpp"
#include "mqo/algorithms/local_search.hpp"
#include "mqo/algorithms/topk.hpp"
#include "mqo/error.hpp"
#include "mqo/instance.hpp"
#include "mqo/report.hpp"

namespace mqo {

/// {"algo": name, "seed": int, "params": {...}}. `level_order` restricts the
/// candidates with level_order_filter before the algorithm runs.
struct AlgorithmConfig {
  std::string algo;
  std::uint64_t seed = 0;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  bool level_order = false;
};

inline const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{
      "exhaustive", "astar", "greedy", "greedy_mk", "topk",
      "random_sampling", "ii", "sa", "2po", "genetic", "iterative_flip"};
  return names;
}

namespace detail {

// Reads typed keys out of a params object and rejects keys nobody asked for.
class ParamReader {
 public:
  ParamReader(const nlohmann::ordered_json& params, std::string algo)
      : params_(params), algo_(std::move(algo)) {
    if (!params_.is_object())
      throw ConfigurationError(algo_ + ": params must be an object");
  }

  template <typename T>
  T get(const std::string& key, T fallback) {
    used_.insert(key);
    auto it = params_.find(key);
    if (it == params_.end()) return fallback;
    try {
      if constexpr (std::is_same_v<T, bool>) {
        if (!it->is_boolean()) throw ConfigurationError("");
      } else if constexpr (std::is_integral_v<T>) {
        if (!it->is_number_integer() || it->template get<std::int64_t>() < 0)
          throw ConfigurationError("");
      } else if constexpr (std::is_floating_point_v<T>) {
        if (!it->is_number()) throw ConfigurationError("");
      } else {
        if (!it->is_string()) throw ConfigurationError("");
      }
      return it->template get<T>();
    } catch (const std::exception&) {
      throw ConfigurationError(algo_ + ": parameter '" + key +
                               "' has the wrong type");
    }
  }

  void finish() const {
    for (auto it = params_.begin(); it != params_.end(); ++it)
      if (!used_.count(it.key()))
        throw ConfigurationError(algo_ + ": unknown parameter '" + it.key() +
                                 "'");
  }

 private:
  const nlohmann::ordered_json& params_;
  std::string algo_;
  std::set<std::string> used_;
};

inline LocalSearchParams read_local_search(ParamReader& p) {
  LocalSearchParams s;
  s.neighborhood = parse_neighborhood(p.get<std::string>("neighborhood", "add_swap_remove"));
  s.max_evals = p.get<std::uint64_t>("max_evals", s.max_evals);
  s.restarts = p.get<std::uint64_t>("restarts", s.restarts);
  s.patience = p.get<std::uint64_t>("patience", s.patience);
  const double t0 = p.get<double>("t0", -1.0);
  if (t0 >= 0.0) s.t0 = t0;
  s.alpha = p.get<double>("alpha", s.alpha);
  s.steps_per_temp = p.get<std::uint64_t>("steps_per_temp", s.steps_per_temp);
  s.two_phase_temp_factor =
      p.get<double>("two_phase_temp_factor", s.two_phase_temp_factor);
  s.two_phase_ii_share = p.get<double>("two_phase_ii_share", s.two_phase_ii_share);
  return s;
}

}  // namespace detail

/// Runs the configured algorithm. `threads` only affects algorithms that
/// shard work, and never their result.
inline AlgorithmReport run_algorithm(const CspInstance& base,
                                     const AlgorithmConfig& config,
                                     std::size_t threads = 1) {
  CspInstance restricted;
  const CspInstance* inst = &base;
  if (config.level_order) {
    restricted = base;
    restricted.restrict_candidates(mask_ids(level_order_filter(base.forest())));
    inst = &restricted;
  }
  detail::ParamReader p(config.params, config.algo);
  AlgorithmReport r;
  const std::string& a = config.algo;
  if (a == "exhaustive") {
    ExhaustiveParams e;
    e.cap = p.get<std::size_t>("cap", e.cap);
    p.finish();
    r = exhaustive(*inst, e, threads);
  } else if (a == "astar") {
    AStarParams e;
    e.cap = p.get<std::size_t>("cap", e.cap);
    p.finish();
    r = astar(*inst, e);
  } else if (a == "greedy") {
    p.finish();
    r = greedy(*inst);
  } else if (a == "greedy_mk") {
    GreedyMkParams g;
    g.k = p.get<std::size_t>("k", g.k);
    g.m_cap = p.get<std::uint64_t>("m_cap", g.m_cap);
    p.finish();
    r = greedy_mk(*inst, g);
  } else if (a == "topk") {
    const auto variant = parse_topk_variant(p.get<std::string>("variant", "total_utility"));
    const auto k = p.get<std::size_t>("k", 3);
    p.finish();
    r = topk(*inst, variant, k);
  } else if (a == "random_sampling") {
    const auto trials = p.get<std::uint64_t>("trials", 2000);
    p.finish();
    r = random_sampling(*inst, trials, config.seed);
  } else if (a == "ii" || a == "sa" || a == "2po") {
    const auto s = detail::read_local_search(p);
    p.finish();
    r = local_search(*inst, parse_local_search_mode(a), s, config.seed);
  } else if (a == "genetic") {
    GeneticParams g;
    g.population = p.get<std::size_t>("population", g.population);
    g.generations = p.get<std::size_t>("generations", g.generations);
    g.mutation_rate = p.get<double>("mutation_rate", g.mutation_rate);
    g.crossover_rate = p.get<double>("crossover_rate", g.crossover_rate);
    const auto sel = p.get<std::string>("selection", "benefit");
    if (sel == "benefit") g.selection = GeneticSelection::kBenefit;
    else if (sel == "stochastic_ranking") g.selection = GeneticSelection::kStochasticRanking;
    else throw ConfigurationError("genetic: unknown selection '" + sel + "'");
    g.ranking_p = p.get<double>("ranking_p", g.ranking_p);
    g.refine = p.get<bool>("refine", g.refine);
    p.finish();
    r = genetic(*inst, g, config.seed);
  } else if (a == "iterative_flip") {
    FlipParams f;
    const auto iterations = p.get<std::uint64_t>("iterations", 200);
    f.p_init = p.get<double>("p_init", f.p_init);
    f.eta = p.get<double>("eta", f.eta);
    f.tau = p.get<double>("tau", f.tau);
    f.anneal = p.get<double>("anneal", f.anneal);
    f.tau_min = p.get<double>("tau_min", f.tau_min);
    f.p_min = p.get<double>("p_min", f.p_min);
    f.p_max = p.get<double>("p_max", f.p_max);
    p.finish();
    r = iterative_flip(*inst, iterations, config.seed, f);
  } else {
    throw ConfigurationError("unknown algorithm '" + a + "'");
  }
  r.seed = config.seed;
  return r;
}

/// Parses {"algo", "seed", "params", "level_order"}.
inline AlgorithmConfig parse_algorithm_config(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw ConfigurationError("config must be an object");
  AlgorithmConfig c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k == "algo" && it->is_string()) c.algo = it->get<std::string>();
    else if (k == "seed" && it->is_number_integer() &&
             it->get<std::int64_t>() >= 0) c.seed = it->get<std::uint64_t>();
    else if (k == "params" && it->is_object()) c.params = *it;
    else if (k == "level_order" && it->is_boolean()) c.level_order = it->get<bool>();
    else throw ConfigurationError("config field '" + k + "' is unknown or mistyped");
  }
  return c;
}

}  // namespace mqo

#endif  // MQO_SOLVE_HPP_
