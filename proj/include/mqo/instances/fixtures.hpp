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

#ifndef MQO_INSTANCES_FIXTURES_HPP_
#define MQO_INSTANCES_FIXTURES_HPP_

#include <string>
#include <vector>

#include "mqo/error.hpp"
#include "mqo/expense.hpp"
#include "mqo/forest.hpp"
#include "mqo/instance.hpp"

namespace mqo {

/// Operation-cost offsets of the small hand-built fixtures.
struct FixtureParams {
  double eps = 0.0;   // fig2: cost of every aggregation
  double eps1 = 0.0;  // fig4: extra cost of the first aggregation
  double eps2 = 0.0;  // fig4: extra cost of the second aggregation
};

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"fig2", "fig4", "fig5",
                                              "fig6", "fig7", "fig8"};
  return names;
}

namespace detail {

// Four single-aggregation queries merged into one forest; q3 and q4 share
// the aggregate c3 of T2, and q4 aggregates it once more into c4.
inline CspInstance fixture_fig2(const FixtureParams& p) {
  using P = PlanNode;
  auto t1 = [] { return P::leaf("T1", 10); };
  auto t2 = [] { return P::leaf("T2", 10); };
  auto c3 = [&] { return P::derived("c3", 8, "g3", p.eps, {t2()}); };
  const ExpressionForest q1 = build_tree(P::derived("c1", 5, "g1", p.eps, {t1()}));
  const ExpressionForest q2 = build_tree(P::derived("c2", 5, "g2", p.eps, {t2()}));
  const ExpressionForest q3 = build_tree(c3());
  const ExpressionForest q4 =
      build_tree(P::derived("c4", 6, "g4", p.eps, {c3()}));
  return CspInstance(merge_trees({q1, q2, q3, q4}));
}

// A chain T1 -> c2 -> c3 under maintenance expense (refresh overhead 1).
inline CspInstance fixture_fig4(const FixtureParams& p) {
  ForestBuilder b;
  const NodeId t1 = b.add_eq("T1", 10);
  const NodeId c2 = b.add_eq("c2", 2, true);
  const NodeId c3 = b.add_eq("c3", 4, true);
  b.add_op("g1", 3 + p.eps1, {t1}, c2);
  b.add_op("g2", 5 + p.eps2, {c2}, c3);
  b.add_root(c3);
  ExpenseModel m;
  m.kind = ExpenseKind::kMaintenance;
  m.delta = 1.0;
  return CspInstance(std::move(b).build(), m);
}

// Two queries over four tables. q1 has two plans, (T1 x T2) x T3 and
// T1 x (T2 x T3); q2 = (T2 x T3) x T4 has one. Storing T2 x T3 and switching
// q1 to its second plan beats q1's individually cheapest plan.
inline CspInstance fixture_fig5(const FixtureParams&) {
  ForestBuilder b;
  const NodeId t1 = b.add_eq("T1", 10);
  const NodeId t2 = b.add_eq("T2", 10);
  const NodeId t3 = b.add_eq("T3", 10);
  const NodeId t4 = b.add_eq("T4", 10);
  const NodeId a12 = b.add_eq("T1xT2", 5, true);
  const NodeId a23 = b.add_eq("T2xT3", 8, true);
  const NodeId q1 = b.add_eq("q1", 5);
  const NodeId q2 = b.add_eq("q2", 5);
  b.add_op("join12", 10, {t1, t2}, a12);
  b.add_op("join23", 20, {t2, t3}, a23);
  b.add_op("join12_3", 10, {a12, t3}, q1);
  b.add_op("join1_23", 10, {t1, a23}, q1);
  b.add_op("join23_4", 10, {a23, t4}, q2);
  b.add_root(q1);
  b.add_root(q2);
  Budget budget;
  budget.limit = 8;
  return CspInstance(std::move(b).build(), ExpenseModel{}, budget);
}

// Two cached plans that share the intermediate T2 x T3, under shared
// storage expense (no per-plan overhead).
inline CspInstance fixture_fig6(const FixtureParams&) {
  ForestBuilder b;
  const NodeId t1 = b.add_eq("T1", 10);
  const NodeId t2 = b.add_eq("T2", 10);
  const NodeId t3 = b.add_eq("T3", 10);
  const NodeId t4 = b.add_eq("T4", 10);
  const NodeId st = b.add_eq("ST", 6, true);
  const NodeId pi = b.add_eq("plan_i", 4, true);
  const NodeId pj = b.add_eq("plan_j", 4, true);
  b.add_op("join23", 10, {t2, t3}, st);
  b.add_op("join_i", 10, {st, t1}, pi);
  b.add_op("join_j", 10, {st, t4}, pj);
  b.add_root(pi);
  b.add_root(pj);
  ExpenseModel m;
  m.kind = ExpenseKind::kSharedStorage;
  m.rho = 0.0;
  return CspInstance(std::move(b).build(), m);
}

// One query: c1 = filter(T1), c2 = c1 x T2, c3 = c1 x c2, with storage
// budget 30.
inline CspInstance fixture_fig7(const FixtureParams&) {
  ForestBuilder b;
  const NodeId t1 = b.add_eq("T1", 20);
  const NodeId t2 = b.add_eq("T2", 4);
  const NodeId c1 = b.add_eq("c1", 10, true);
  const NodeId c2 = b.add_eq("c2", 20, true);
  const NodeId c3 = b.add_eq("c3", 100, true);
  b.add_op("filter", 20, {t1}, c1);
  b.add_op("join1", 40, {c1, t2}, c2);
  b.add_op("join2", 200, {c1, c2}, c3);
  b.add_root(c3);
  Budget budget;
  budget.limit = 30;
  return CspInstance(std::move(b).build(), ExpenseModel{}, budget);
}

// Two queries over three tables whose candidates nest at several depths;
// used to exercise the compressed forest. Sizes and costs are arbitrary.
inline CspInstance fixture_fig8(const FixtureParams&) {
  ForestBuilder b;
  const NodeId t1 = b.add_eq("T1", 10);
  const NodeId t2 = b.add_eq("T2", 10);
  const NodeId t3 = b.add_eq("T3", 10);
  const NodeId c1 = b.add_eq("c1", 4, true);
  const NodeId c2 = b.add_eq("c2", 4, true);
  const NodeId c3 = b.add_eq("c3", 4, true);
  const NodeId c4 = b.add_eq("c4", 6, true);
  const NodeId c5 = b.add_eq("c5", 6, true);
  const NodeId c7 = b.add_eq("c7", 3, true);
  const NodeId c6 = b.add_eq("c6", 5, true);
  const NodeId c8 = b.add_eq("c8", 5, true);
  b.add_op("f1", 5, {t1}, c1);
  b.add_op("f2", 5, {t2}, c2);
  b.add_op("f3", 5, {t3}, c3);
  b.add_op("j4", 8, {c1, c2}, c4);
  b.add_op("j5", 8, {c3, t2}, c5);
  b.add_op("agg7", 4, {c3}, c7);
  b.add_op("j6", 8, {c5, c7}, c6);
  b.add_op("j8", 8, {c4, c7}, c8);
  b.add_root(c8);
  b.add_root(c6);
  return CspInstance(std::move(b).build());
}

}  // namespace detail

/// Small hand-built instances: fig2 (shared aggregates), fig4 (maintenance
/// expense), fig5 (alternative plans), fig6 (plan cache), fig7 (single
/// query, storage budget 30), fig8 (nested candidates).
inline CspInstance fixture(const std::string& name,
                           const FixtureParams& params = {}) {
  if (name == "fig2") return detail::fixture_fig2(params);
  if (name == "fig4") return detail::fixture_fig4(params);
  if (name == "fig5") return detail::fixture_fig5(params);
  if (name == "fig6") return detail::fixture_fig6(params);
  if (name == "fig7") return detail::fixture_fig7(params);
  if (name == "fig8") return detail::fixture_fig8(params);
  throw InvalidArgumentError("unknown fixture '" + name + "'");
}

}  // namespace mqo

#endif  // MQO_INSTANCES_FIXTURES_HPP_
