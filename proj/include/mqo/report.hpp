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

#ifndef MQO_REPORT_HPP_
#define MQO_REPORT_HPP_

#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mqo/cost_model.hpp"
#include "mqo/error.hpp"
#include "mqo/instance.hpp"

namespace mqo {

struct TracePoint {
  double benefit = 0.0;
  double expense = 0.0;
};

/// What an algorithm returns. `benefit` and `expense` are the values the
/// algorithm computed along its own evaluation path; `verify_report`
/// re-derives both independently.
struct AlgorithmReport {
  std::string algo;
  std::vector<NodeId> selection;  // ascending eq ids
  double benefit = 0.0;
  double expense = 0.0;
  bool feasible = true;
  std::uint64_t iterations = 0;
  std::vector<TracePoint> trace;
  std::uint64_t seed = 0;
  std::int64_t elapsed_ns = 0;
  std::map<std::string, std::uint64_t> counters;
};

/// Recomputes benefit and expense from scratch and checks the report
/// against them. Throws InvariantError on mismatch.
inline void verify_report(const CspInstance& inst, const AlgorithmReport& r) {
  const Mask z = make_mask(inst.forest(), std::span<const NodeId>(r.selection));
  for (NodeId id : r.selection)
    if (!inst.forest().eq(id).candidate)
      throw InvariantError(r.algo + ": selected node " + std::to_string(id) +
                           " is not a candidate");
  const double b = inst.benefit(z);
  const double e = inst.expense(z);
  auto close = [](double x, double y) {
    return std::fabs(x - y) <= kTolerance * std::max(1.0, std::fabs(y));
  };
  if (!close(r.benefit, b))
    throw InvariantError(r.algo + ": reported benefit " +
                         std::to_string(r.benefit) + " but selection yields " +
                         std::to_string(b));
  if (!close(r.expense, e))
    throw InvariantError(r.algo + ": reported expense " +
                         std::to_string(r.expense) + " but selection costs " +
                         std::to_string(e));
  if (r.feasible != inst.feasible(e))
    throw InvariantError(r.algo + ": feasible flag disagrees with budget");
}

namespace detail {

// Fills the outcome fields of a report for selection z.
inline void settle(const CspInstance& inst, const Mask& z, double benefit,
                   double expense, AlgorithmReport& r) {
  r.selection = mask_ids(z);
  r.benefit = benefit;
  r.expense = expense;
  r.feasible = inst.feasible(expense);
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t elapsed_ns() const {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Total order used to pick between equally good selections: higher benefit,
// then lower expense, then lexicographically smaller id list.
inline bool better_selection(double b1, double e1, const std::vector<NodeId>& s1,
                             double b2, double e2,
                             const std::vector<NodeId>& s2) {
  if (b1 != b2) return b1 > b2;
  if (e1 != e2) return e1 < e2;
  return s1 < s2;
}

}  // namespace detail

}  // namespace mqo

#endif  // MQO_REPORT_HPP_
