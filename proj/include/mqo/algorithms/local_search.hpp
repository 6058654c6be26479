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

#ifndef MQO_ALGORITHMS_LOCAL_SEARCH_HPP_
#define MQO_ALGORITHMS_LOCAL_SEARCH_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mqo/algorithms/greedy.hpp"
#include "mqo/error.hpp"
#include "mqo/instance.hpp"
#include "mqo/report.hpp"
#include "mqo/rng.hpp"

namespace mqo {

/// Samples uniform bit strings over the candidates and keeps the best
/// feasible one. The empty selection is the starting incumbent.
inline AlgorithmReport random_sampling(const CspInstance& inst,
                                       std::uint64_t trials,
                                       std::uint64_t seed) {
  if (trials < 1) throw InvalidArgumentError("random_sampling needs trials >= 1");
  detail::Stopwatch clock;
  Rng rng(seed);
  AlgorithmReport r;
  r.algo = "random_sampling";
  r.seed = seed;
  std::vector<NodeId> best_ids;
  double best_b = 0.0, best_e = 0.0;
  Mask z = inst.empty_mask();
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (NodeId c : inst.candidates()) z[c] = rng.bernoulli(0.5);
    const double e = inst.expense(z);
    ++r.iterations;
    if (!inst.feasible(e)) continue;
    const double b = inst.benefit(z);
    auto ids = mask_ids(z);
    if (detail::better_selection(b, e, ids, best_b, best_e, best_ids)) {
      best_b = b;
      best_e = e;
      best_ids = std::move(ids);
    }
    r.trace.push_back({best_b, best_e});
  }
  detail::settle(inst, make_mask(inst.forest(), std::span<const NodeId>(best_ids)),
                 best_b, best_e, r);
  r.counters["evaluations"] = trials;
  r.elapsed_ns = clock.elapsed_ns();
  return r;
}

enum class LocalSearchMode { kIterativeImprovement, kSimulatedAnnealing, kTwoPhase };
enum class Neighborhood { kAddSwapRemove, kSingleFlip };

inline const char* to_string(LocalSearchMode m) {
  switch (m) {
    case LocalSearchMode::kIterativeImprovement: return "ii";
    case LocalSearchMode::kSimulatedAnnealing: return "sa";
    case LocalSearchMode::kTwoPhase: return "2po";
  }
  return "?";
}

inline LocalSearchMode parse_local_search_mode(const std::string& name) {
  if (name == "ii") return LocalSearchMode::kIterativeImprovement;
  if (name == "sa") return LocalSearchMode::kSimulatedAnnealing;
  if (name == "2po") return LocalSearchMode::kTwoPhase;
  throw ConfigurationError("unknown local search mode '" + name + "'");
}

inline Neighborhood parse_neighborhood(const std::string& name) {
  if (name == "add_swap_remove") return Neighborhood::kAddSwapRemove;
  if (name == "flip") return Neighborhood::kSingleFlip;
  throw ConfigurationError("unknown neighborhood '" + name + "'");
}

struct LocalSearchParams {
  Neighborhood neighborhood = Neighborhood::kAddSwapRemove;
  std::uint64_t max_evals = 2000;
  std::uint64_t restarts = 10;        // maximum number of runs
  std::uint64_t patience = 0;         // 0: twice the candidate count
  std::optional<double> t0;           // default: greedy benefit, or 1
  double alpha = 0.95;
  std::uint64_t steps_per_temp = 50;
  double two_phase_temp_factor = 0.1; // SA start temperature in 2PO
  double two_phase_ii_share = 0.5;    // evaluation share of the II phase
};

namespace detail {

class LocalSearcher {
 public:
  LocalSearcher(const CspInstance& inst, const LocalSearchParams& params,
                Rng& rng, AlgorithmReport& r)
      : inst_(inst), params_(params), rng_(rng), r_(r),
        penalty_(effective_penalty(inst)),
        patience_(params.patience ? params.patience
                                  : 2 * std::max<std::size_t>(
                                            1, inst.candidates().size())) {}

  struct Point {
    Mask z;
    double benefit = 0.0, expense = 0.0, score = 0.0;
  };

  Point evaluate(Mask z) {
    Point p;
    p.benefit = inst_.benefit(z);
    p.expense = inst_.expense(z);
    p.score = std::isfinite(inst_.budget().limit)
                  ? penalized_benefit(p.benefit, p.expense,
                                      inst_.budget().limit, penalty_)
                  : p.benefit;
    p.z = std::move(z);
    ++evals_;
    if (inst_.feasible(p.expense)) {
      auto ids = mask_ids(p.z);
      if (!have_best_ || better_selection(p.benefit, p.expense, ids, best_.benefit,
                                          best_.expense, best_ids_)) {
        have_best_ = true;
        best_ = p;
        best_ids_ = std::move(ids);
      }
    }
    if (!have_top_ || p.score > top_.score) {
      have_top_ = true;
      top_ = p;
    }
    return p;
  }

  bool exhausted(std::uint64_t limit) const { return evals_ >= limit; }

  Mask neighbor(const Mask& z) {
    const auto& cands = inst_.candidates();
    Mask out = z;
    if (cands.empty()) return out;
    if (params_.neighborhood == Neighborhood::kSingleFlip) {
      const NodeId c = cands[rng_.below(cands.size())];
      out[c] = !out[c];
      return out;
    }
    std::vector<NodeId> in, outside;
    for (NodeId c : cands) (z[c] ? in : outside).push_back(c);
    enum Move { kAdd, kRemove, kSwap };
    std::vector<Move> moves;
    if (!outside.empty()) moves.push_back(kAdd);
    if (!in.empty()) moves.push_back(kRemove);
    if (!in.empty() && !outside.empty()) moves.push_back(kSwap);
    const Move m = moves[rng_.below(moves.size())];
    if (m == kAdd || m == kSwap) out[outside[rng_.below(outside.size())]] = 1;
    if (m == kRemove || m == kSwap) out[in[rng_.below(in.size())]] = 0;
    return out;
  }

  // One run from `start`. With t0 == 0 only strict improvements are
  // accepted, which is iterative improvement; otherwise the temperature
  // cools by alpha every steps_per_temp proposals. The run ends after
  // `patience` consecutive rejections or when the evaluation limit is hit.
  Point run(Point current, double t0, std::uint64_t limit) {
    double t = t0;
    std::uint64_t rejected = 0, steps = 0;
    while (rejected < patience_ && !exhausted(limit)) {
      Point next = evaluate(neighbor(current.z));
      const double delta = next.score - current.score;
      bool accept = delta > 0.0;
      if (!accept && t > 0.0) accept = rng_.uniform() < std::exp(delta / t);
      if (accept) {
        current = std::move(next);
        rejected = 0;
      } else {
        ++rejected;
      }
      r_.trace.push_back({current.benefit, current.expense});
      if (t > 0.0 && ++steps % params_.steps_per_temp == 0) t *= params_.alpha;
    }
    return current;
  }

  // Runs from the empty selection, then restarts from uniform random
  // selections until the run or evaluation limit is reached.
  void runs(double t0, std::uint64_t limit, std::optional<Point> first = {}) {
    for (std::uint64_t k = 0; k < params_.restarts && !exhausted(limit); ++k) {
      Point start;
      if (k == 0) {
        start = first ? *first : evaluate(inst_.empty_mask());
      } else {
        Mask z = inst_.empty_mask();
        for (NodeId c : inst_.candidates()) z[c] = rng_.bernoulli(0.5);
        start = evaluate(std::move(z));
      }
      run(std::move(start), t0, limit);
    }
  }

  const Point& top() const { return top_; }
  std::uint64_t evaluations() const { return evals_; }

  void finish() {
    if (!have_best_) evaluate(inst_.empty_mask());
    settle(inst_, best_.z, best_.benefit, best_.expense, r_);
  }

 private:
  const CspInstance& inst_;
  const LocalSearchParams& params_;
  Rng& rng_;
  AlgorithmReport& r_;
  double penalty_;
  std::uint64_t patience_;
  std::uint64_t evals_ = 0;
  bool have_best_ = false, have_top_ = false;
  Point best_, top_;
  std::vector<NodeId> best_ids_;
};

}  // namespace detail

/// Penalized-benefit local search: iterative improvement with restarts,
/// simulated annealing, or two-phase (II, then SA from the best II point at
/// a reduced temperature). The best feasible selection seen is returned.
inline AlgorithmReport local_search(const CspInstance& inst,
                                    LocalSearchMode mode,
                                    const LocalSearchParams& params,
                                    std::uint64_t seed) {
  if (!(params.alpha > 0.0 && params.alpha < 1.0))
    throw ConfigurationError("cooling factor alpha must be in (0, 1), got " +
                             std::to_string(params.alpha));
  if (params.steps_per_temp == 0)
    throw ConfigurationError("steps_per_temp must be positive");
  if (params.t0 && !(*params.t0 >= 0.0))
    throw ConfigurationError("initial temperature must be non-negative");
  if (!(params.two_phase_ii_share >= 0.0 && params.two_phase_ii_share <= 1.0))
    throw ConfigurationError("two_phase_ii_share must be in [0, 1]");
  detail::Stopwatch clock;
  Rng rng(seed);
  AlgorithmReport r;
  r.algo = to_string(mode);
  r.seed = seed;
  detail::LocalSearcher search(inst, params, rng, r);

  auto start_temperature = [&] {
    if (params.t0) return *params.t0;
    const double b = greedy(inst).benefit;
    return b > 0.0 ? b : 1.0;
  };
  switch (mode) {
    case LocalSearchMode::kIterativeImprovement:
      search.runs(0.0, params.max_evals);
      break;
    case LocalSearchMode::kSimulatedAnnealing:
      search.runs(start_temperature(), params.max_evals);
      break;
    case LocalSearchMode::kTwoPhase: {
      const auto ii_limit = static_cast<std::uint64_t>(
          std::floor(params.max_evals * params.two_phase_ii_share));
      search.runs(0.0, ii_limit);
      if (search.evaluations() == 0) search.evaluate(inst.empty_mask());
      const double t = start_temperature() * params.two_phase_temp_factor;
      for (std::uint64_t k = 0;
           k < params.restarts && !search.exhausted(params.max_evals); ++k)
        search.run(search.top(), t, params.max_evals);
      break;
    }
  }
  search.finish();
  r.iterations = search.evaluations();
  r.counters["evaluations"] = search.evaluations();
  r.elapsed_ns = clock.elapsed_ns();
  return r;
}

}  // namespace mqo

#endif  // MQO_ALGORITHMS_LOCAL_SEARCH_HPP_
