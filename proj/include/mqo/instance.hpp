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

#ifndef MQO_INSTANCE_HPP_
#define MQO_INSTANCE_HPP_

#include <algorithm>
#include <limits>
#include <utility>
#include <vector>

#include "mqo/cost_model.hpp"
#include "mqo/expense.hpp"
#include "mqo/forest.hpp"

namespace mqo {

/// A candidate selection problem: maximize workload benefit over subsets of
/// the forest's candidates whose total expense fits the budget.
class CspInstance {
 public:
  CspInstance() = default;

  explicit CspInstance(ExpressionForest forest, ExpenseModel expense = {},
                       Budget budget = {})
      : forest_(std::move(forest)),
        costs_(ex_costs(forest_)),
        expense_(expense),
        budget_(std::move(budget)),
        candidates_(forest_.candidates()),
        base_cost_(node_costs(forest_, Mask(forest_.eq_count(), 0))) {}

  const ExpressionForest& forest() const { return forest_; }
  const CostTable& costs() const { return costs_; }
  const ExpenseModel& expense_model() const { return expense_; }
  const Budget& budget() const { return budget_; }
  const std::vector<NodeId>& candidates() const { return candidates_; }

  void set_budget(Budget budget) { budget_ = std::move(budget); }
  void set_expense_model(ExpenseModel model) { expense_ = model; }
  void restrict_candidates(const std::vector<NodeId>& ids) {
    forest_ = forest_.with_candidates(ids);
    candidates_ = forest_.candidates();
  }

  Mask empty_mask() const { return Mask(forest_.eq_count(), 0); }

  /// Same arithmetic as workload_benefit, with the empty-selection pass
  /// computed once.
  double benefit(const Mask& z) const {
    const auto with = node_costs(forest_, z);
    double total = 0.0;
    for (const Root& r : forest_.roots())
      total += r.weight * (base_cost_[r.eq] - with[r.eq]);
    return total;
  }

  /// Weighted workload cost T_z(Q).
  double cost(const Mask& z) const { return workload_cost(forest_, z); }
  double expense(const Mask& z) const {
    return total_expense(expense_, forest_, costs_, z);
  }
  bool feasible(double expense) const { return within_budget(expense, budget_); }

  // Expense of c when it is the only selected candidate.
  double standalone_expense(NodeId c) const {
    if (expense_.is_static()) return forest_.eq(c).size;
    Mask z = empty_mask();
    z[c] = 1;
    return candidate_expense(expense_, forest_, costs_, c, z);
  }

 private:
  ExpressionForest forest_;
  CostTable costs_;
  ExpenseModel expense_;
  Budget budget_;
  std::vector<NodeId> candidates_;
  std::vector<double> base_cost_;
};

/// Penalty coefficient used when the budget does not fix one: twice the best
/// single-candidate benefit density, so one unit of overshoot always costs
/// more than any unit of expense can buy.
inline double effective_penalty(const CspInstance& inst) {
  if (inst.budget().penalty_r) return *inst.budget().penalty_r;
  double best = 0.0;
  for (NodeId c : inst.candidates()) {
    Mask z = inst.empty_mask();
    z[c] = 1;
    const double e = inst.standalone_expense(c);
    if (e <= 0.0) continue;
    best = std::max(best, inst.benefit(z) / e);
  }
  return best > 0.0 ? 2.0 * best : 1.0;
}

/// Candidates that can ever be part of a feasible selection. Only static
/// expense is monotone, so other models keep every candidate.
inline std::vector<NodeId> admissible_candidates(const CspInstance& inst) {
  if (!inst.expense_model().is_static()) return inst.candidates();
  std::vector<NodeId> out;
  for (NodeId c : inst.candidates())
    if (inst.feasible(inst.forest().eq(c).size)) out.push_back(c);
  return out;
}

}  // namespace mqo

#endif  // MQO_INSTANCE_HPP_
