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

#ifndef MQO_ALGORITHMS_TOPK_HPP_
#define MQO_ALGORITHMS_TOPK_HPP_

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "mqo/cost_model.hpp"
#include "mqo/error.hpp"
#include "mqo/instance.hpp"
#include "mqo/report.hpp"

namespace mqo {

enum class TopkVariant { kFreq, kUtility, kTotalUtility, kNormTotalUtility };

inline const char* to_string(TopkVariant v) {
  switch (v) {
    case TopkVariant::kFreq: return "freq";
    case TopkVariant::kUtility: return "utility";
    case TopkVariant::kTotalUtility: return "total_utility";
    case TopkVariant::kNormTotalUtility: return "norm_total_utility";
  }
  return "?";
}

inline TopkVariant parse_topk_variant(const std::string& name) {
  if (name == "freq") return TopkVariant::kFreq;
  if (name == "utility") return TopkVariant::kUtility;
  if (name == "total_utility") return TopkVariant::kTotalUtility;
  if (name == "norm_total_utility") return TopkVariant::kNormTotalUtility;
  throw ConfigurationError("unknown top-k variant '" + name + "'");
}

/// Independent per-candidate scores used by topk, indexed like
/// inst.candidates().
inline std::vector<double> topk_scores(const CspInstance& inst,
                                       TopkVariant variant) {
  const auto& forest = inst.forest();
  const auto& cands = inst.candidates();
  std::vector<double> score(cands.size(), 0.0);
  if (variant == TopkVariant::kFreq) {
    const AncestorTable table(forest);
    for (std::size_t i = 0; i < cands.size(); ++i)
      for (const Root& r : forest.roots())
        if (r.eq == cands[i] || table.is_ancestor(r.eq, cands[i]))
          score[i] += 1.0;
    return score;
  }
  const auto base = node_costs(forest, inst.empty_mask());
  for (std::size_t i = 0; i < cands.size(); ++i) {
    Mask z = inst.empty_mask();
    z[cands[i]] = 1;
    if (variant == TopkVariant::kUtility) {
      const auto with = node_costs(forest, z);
      for (const Root& r : forest.roots())
        score[i] = std::max(score[i], r.weight * (base[r.eq] - with[r.eq]));
      continue;
    }
    const double b = inst.benefit(z);
    if (variant == TopkVariant::kTotalUtility) {
      score[i] = b;
    } else {
      const double e = inst.standalone_expense(cands[i]);
      score[i] = e > 0.0 ? b / e
                 : b > 0.0 ? std::numeric_limits<double>::infinity()
                           : 0.0;
    }
  }
  return score;
}

/// Takes the k best-scoring candidates (ties: lower id), then drops the
/// lowest-ranked ones until the selection fits the budget.
inline AlgorithmReport topk(const CspInstance& inst, TopkVariant variant,
                            std::size_t k) {
  detail::Stopwatch clock;
  const auto& cands = inst.candidates();
  const auto score = topk_scores(inst, variant);
  std::vector<std::size_t> rank(cands.size());
  for (std::size_t i = 0; i < rank.size(); ++i) rank[i] = i;
  std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) {
    return score[a] > score[b];
  });
  rank.resize(std::min(k, rank.size()));

  AlgorithmReport r;
  r.algo = std::string("topk_") + to_string(variant);
  Mask z = inst.empty_mask();
  for (std::size_t i : rank) z[cands[i]] = 1;
  double e = inst.expense(z);
  while (!inst.feasible(e) && !rank.empty()) {
    z[cands[rank.back()]] = 0;
    rank.pop_back();
    e = inst.expense(z);
    ++r.iterations;
  }
  detail::settle(inst, z, inst.benefit(z), e, r);
  r.elapsed_ns = clock.elapsed_ns();
  return r;
}

}  // namespace mqo

#endif  // MQO_ALGORITHMS_TOPK_HPP_
