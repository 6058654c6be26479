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

#ifndef MQO_EXPENSE_HPP_
#define MQO_EXPENSE_HPP_

#include <algorithm>
#include <cmath>
#include <compare>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mqo/cost_model.hpp"
#include "mqo/error.hpp"
#include "mqo/forest.hpp"
#include "mqo/rng.hpp"

namespace mqo {

enum class ExpenseKind { kStatic, kMaintenance, kSharedStorage };

inline const char* to_string(ExpenseKind kind) {
  switch (kind) {
    case ExpenseKind::kStatic: return "static";
    case ExpenseKind::kMaintenance: return "maintenance";
    case ExpenseKind::kSharedStorage: return "shared_storage";
  }
  return "?";
}

inline ExpenseKind parse_expense_kind(const std::string& name) {
  if (name == "static") return ExpenseKind::kStatic;
  if (name == "maintenance") return ExpenseKind::kMaintenance;
  if (name == "shared_storage") return ExpenseKind::kSharedStorage;
  throw ConfigurationError("unknown expense kind '" + name + "'");
}

/// How much keeping a candidate costs.
///
///  - static: its size, independent of what else is kept.
///  - maintenance: delta plus the cheapest way to re-derive it, reading
///    selected proper descendants at their reuse cost.
///  - shared_storage: rho plus the sizes in its derivation subtree that are
///    not already stored under a selected proper descendant.
struct ExpenseModel {
  ExpenseKind kind = ExpenseKind::kStatic;
  double delta = 1.0;
  double rho = 0.0;

  bool is_static() const { return kind == ExpenseKind::kStatic; }
};

struct Budget {
  double limit = std::numeric_limits<double>::infinity();
  // Penalty coefficient r; empty selects an instance-derived default.
  std::optional<double> penalty_r;
};

inline bool within_budget(double expense, const Budget& budget) {
  return expense <= budget.limit + kTolerance;
}

namespace detail {

// Eq-nodes in the derivation subtree of c, following cheapest producers.
inline void mark_subtree(const ExpressionForest& forest, const CostTable& costs,
                         NodeId c, std::vector<char>& mark) {
  std::vector<NodeId> stack{c};
  mark[c] = 1;
  while (!stack.empty()) {
    const NodeId x = stack.back();
    stack.pop_back();
    const NodeId p = costs.best_producer[x];
    if (p == CostTable::kNoProducer) continue;
    for (NodeId in : forest.op(p).inputs)
      if (!mark[in]) {
        mark[in] = 1;
        stack.push_back(in);
      }
  }
}

inline double shared_footprint(const ExpressionForest& forest,
                               const CostTable& costs, NodeId c,
                               const Mask& z) {
  const std::size_t n = forest.eq_count();
  std::vector<char> own(n, 0);
  mark_subtree(forest, costs, c, own);
  std::vector<char> stored(n, 0);
  for (NodeId d = 0; d < n; ++d)
    if (d != c && z[d] && own[d] && !stored[d])
      mark_subtree(forest, costs, d, stored);
  double total = 0.0;
  for (NodeId x = 0; x < n; ++x)
    if (own[x] && !stored[x]) total += forest.eq(x).size;
  return total;
}

}  // namespace detail

/// e_c(C) for a single selected candidate c (z must contain c).
inline double candidate_expense(const ExpenseModel& model,
                                const ExpressionForest& forest,
                                const CostTable& costs, NodeId c,
                                const Mask& z) {
  switch (model.kind) {
    case ExpenseKind::kStatic:
      return forest.eq(c).size;
    case ExpenseKind::kMaintenance: {
      const auto cost = node_costs(forest, z);
      return model.delta + detail::derivation_cost(forest, c, cost);
    }
    case ExpenseKind::kSharedStorage:
      return model.rho + detail::shared_footprint(forest, costs, c, z);
  }
  throw ConfigurationError("unknown expense kind");
}

inline double total_expense(const ExpenseModel& model,
                            const ExpressionForest& forest,
                            const CostTable& costs, const Mask& z) {
  double total = 0.0;
  switch (model.kind) {
    case ExpenseKind::kStatic:
      for (NodeId id = 0; id < z.size(); ++id)
        if (z[id]) total += forest.eq(id).size;
      return total;
    case ExpenseKind::kMaintenance: {
      const auto cost = node_costs(forest, z);
      for (NodeId id = 0; id < z.size(); ++id)
        if (z[id])
          total += model.delta + detail::derivation_cost(forest, id, cost);
      return total;
    }
    case ExpenseKind::kSharedStorage:
      for (NodeId id = 0; id < z.size(); ++id)
        if (z[id])
          total += model.rho + detail::shared_footprint(forest, costs, id, z);
      return total;
  }
  throw ConfigurationError("unknown expense kind");
}

inline double total_expense(const ExpenseModel& model,
                            const ExpressionForest& forest, const Mask& z) {
  return total_expense(model, forest, ex_costs(forest), z);
}

/// Benefit minus r times the budget overshoot.
inline double penalized_benefit(double benefit, double expense, double limit,
                                double r) {
  return benefit - r * std::max(0.0, expense - limit);
}

inline double penalized_benefit(double benefit, const ExpenseModel& model,
                                const ExpressionForest& forest, const Mask& z,
                                const Budget& budget) {
  const double r = budget.penalty_r.value_or(1.0);
  return penalized_benefit(benefit, total_expense(model, forest, z),
                           budget.limit, r);
}

struct ScoredSet {
  double benefit = 0.0;
  double expense = 0.0;
};

/// Stochastic-ranking comparison: with probability p by benefit (higher
/// first), otherwise by expense (lower first). `less` means a ranks ahead.
inline std::weak_ordering stochastic_compare(const ScoredSet& a,
                                             const ScoredSet& b, double p,
                                             Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidArgumentError("stochastic ranking probability must be in "
                               "[0, 1], got " + std::to_string(p));
  if (rng.uniform() < p) {
    if (a.benefit > b.benefit) return std::weak_ordering::less;
    if (a.benefit < b.benefit) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
  }
  if (a.expense < b.expense) return std::weak_ordering::less;
  if (a.expense > b.expense) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

}  // namespace mqo

#endif  // MQO_EXPENSE_HPP_
