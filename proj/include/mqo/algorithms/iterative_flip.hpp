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

#ifndef MQO_ALGORITHMS_ITERATIVE_FLIP_HPP_
#define MQO_ALGORITHMS_ITERATIVE_FLIP_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "mqo/cost_model.hpp"
#include "mqo/error.hpp"
#include "mqo/instance.hpp"
#include "mqo/report.hpp"
#include "mqo/rng.hpp"

namespace mqo {

/// Decides how flip probabilities react to reuse statistics. Vectors are
/// indexed like inst.candidates(). `signal` holds each candidate's latest
/// utility per unit of expense, normalized to [0, 1].
class FlipPolicy {
 public:
  virtual ~FlipPolicy() = default;
  virtual void update(std::span<const double> signal, std::vector<double>& p,
                      std::uint64_t iteration) = 0;
};

struct FlipParams {
  double p_init = 0.5;
  double eta = 0.3;          // smoothing weight of the first update
  double tau = 0.5;          // logistic temperature of the first update
  double anneal = 0.995;     // per-iteration factor applied to eta and tau
  double tau_min = 0.02;
  double p_min = 0.02;
  double p_max = 0.98;
};

/// p <- (1 - eta) p + eta * logistic((signal - 1/2) / tau), clamped, with
/// eta and tau shrinking geometrically.
class SmoothedFlipPolicy : public FlipPolicy {
 public:
  explicit SmoothedFlipPolicy(const FlipParams& params)
      : params_(params), eta_(params.eta), tau_(params.tau) {}

  void update(std::span<const double> signal, std::vector<double>& p,
              std::uint64_t) override {
    for (std::size_t j = 0; j < p.size(); ++j) {
      const double target = 1.0 / (1.0 + std::exp(-(signal[j] - 0.5) / tau_));
      p[j] = std::clamp((1.0 - eta_) * p[j] + eta_ * target, params_.p_min,
                        params_.p_max);
    }
    eta_ *= params_.anneal;
    tau_ = std::max(params_.tau_min, tau_ * params_.anneal);
  }

 private:
  FlipParams params_;
  double eta_, tau_;
};

/// Weighted number of root-to-node flows through each eq-node when nothing
/// is reused. AND-forests only.
inline std::vector<double> free_flows(const ExpressionForest& forest) {
  std::vector<double> flow(forest.eq_count(), 0.0);
  for (const Root& r : forest.roots()) flow[r.eq] += r.weight;
  const auto order = forest.topo_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const EqNode& e = forest.eq(*it);
    if (flow[*it] == 0.0 || e.producers.empty()) continue;
    for (NodeId in : forest.op(e.producers.front()).inputs) flow[in] += flow[*it];
  }
  return flow;
}

/// Iterated flip / stats / update loop. Each iteration draws every
/// candidate independently with its flip probability, drops the lowest
/// utility-per-expense picks until the budget holds, runs the two-pass reuse
/// oracle for reuse counts and benefit, and feeds the per-candidate
/// utilities back into the policy. Returns the best feasible iterate.
inline AlgorithmReport iterative_flip(const CspInstance& inst,
                                      std::uint64_t iterations,
                                      std::uint64_t seed,
                                      const FlipParams& params = {},
                                      FlipPolicy* policy = nullptr) {
  const auto& forest = inst.forest();
  if (!forest.is_and_forest())
    throw UnsupportedStructureError(
        "iterative_flip requires a forest without alternative producers");
  if (iterations < 1)
    throw InvalidArgumentError("iterative_flip needs iterations >= 1");
  if (!(params.p_init >= 0.0 && params.p_init <= 1.0) ||
      !(params.p_min >= 0.0 && params.p_min <= params.p_max &&
        params.p_max <= 1.0) ||
      !(params.eta >= 0.0 && params.eta <= 1.0) || !(params.tau > 0.0) ||
      !(params.tau_min > 0.0) ||
      !(params.anneal > 0.0 && params.anneal <= 1.0))
    throw ConfigurationError("invalid flip parameters");

  detail::Stopwatch clock;
  Rng rng(seed);
  SmoothedFlipPolicy fallback(params);
  FlipPolicy& pol = policy ? *policy : fallback;

  const auto& cands = inst.candidates();
  const std::size_t m = cands.size();
  const CostTable& costs = inst.costs();
  std::vector<double> unit_expense(m);
  std::vector<double> utility(m);  // latest benefit per expense
  const auto flows = free_flows(forest);
  for (std::size_t j = 0; j < m; ++j) {
    unit_expense[j] = inst.standalone_expense(cands[j]);
    utility[j] = std::max(0.0, costs.unit_benefit[cands[j]]) * flows[cands[j]];
    if (unit_expense[j] > 0.0) utility[j] /= unit_expense[j];
  }
  double scale = 0.0;
  for (double u : utility) scale = std::max(scale, u);

  std::vector<double> p(m, params.p_init);
  std::vector<double> signal(m, 0.0);
  std::vector<std::size_t> by_utility(m);

  AlgorithmReport r;
  r.algo = "iterative_flip";
  r.seed = seed;
  std::vector<NodeId> best_ids;
  double best_b = 0.0, best_e = 0.0;
  std::uint64_t visits = 0, repairs = 0;
  Mask z = inst.empty_mask();
  const bool additive = inst.expense_model().is_static();

  for (std::uint64_t it = 0; it < iterations; ++it) {
    // Flip.
    for (std::size_t j = 0; j < m; ++j) z[cands[j]] = rng.bernoulli(p[j]);
    double e = inst.expense(z);
    if (!inst.feasible(e)) {
      for (std::size_t j = 0; j < m; ++j) by_utility[j] = j;
      std::stable_sort(by_utility.begin(), by_utility.end(),
                       [&](std::size_t a, std::size_t b) {
                         return utility[a] < utility[b];
                       });
      for (std::size_t j : by_utility) {
        if (inst.feasible(e)) break;
        if (!z[cands[j]]) continue;
        z[cands[j]] = 0;
        e = additive ? e - forest.eq(cands[j]).size : inst.expense(z);
        ++repairs;
      }
    }
    if (additive) e = inst.expense(z);
    // Stats.
    const SelectionState s = reuse_oracle(forest, costs, z);
    visits += s.pass1_visits + s.pass2_visits;
    auto ids = mask_ids(z);
    if (detail::better_selection(s.total_benefit, e, ids, best_b, best_e,
                                 best_ids)) {
      best_b = s.total_benefit;
      best_e = e;
      best_ids = std::move(ids);
    }
    r.trace.push_back({s.total_benefit, e});
    // Update.
    for (std::size_t j = 0; j < m; ++j) {
      if (!z[cands[j]]) continue;
      double u = costs.unit_benefit[cands[j]] * s.n_reuses[cands[j]];
      if (unit_expense[j] > 0.0) u /= unit_expense[j];
      utility[j] = std::max(0.0, u);
      scale = std::max(scale, utility[j]);
    }
    for (std::size_t j = 0; j < m; ++j)
      signal[j] = scale > 0.0 ? utility[j] / scale : 0.0;
    pol.update(signal, p, it);
    ++r.iterations;
  }

  detail::settle(inst, make_mask(forest, std::span<const NodeId>(best_ids)),
                 best_b, best_e, r);
  r.counters["stats_visits"] = visits;
  r.counters["repair_drops"] = repairs;
  r.elapsed_ns = clock.elapsed_ns();
  return r;
}

}  // namespace mqo

#endif  // MQO_ALGORITHMS_ITERATIVE_FLIP_HPP_
