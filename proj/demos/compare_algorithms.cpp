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

// Runs every algorithm on the single-query fixture and prints what each
// one picked, next to the brute-force optimum.

#include <cstdio>

#include "mqo/mqo.hpp"
#include "mqo_oracle/oracle.hpp"

int main() {
  const mqo::CspInstance inst = mqo::fixture("fig7");
  const auto& f = inst.forest();

  std::printf("candidates (budget %g):\n", inst.budget().limit);
  for (mqo::NodeId c : inst.candidates())
    std::printf("  %-3s size %5g  unit benefit %5g\n", f.eq(c).label.c_str(),
                f.eq(c).size, inst.costs().unit_benefit[c]);

  const auto opt = mqo::oracle::brute_force_select(inst);
  std::printf("optimum %g\n\n", opt.optimum);

  for (const auto& name : mqo::algorithm_names()) {
    mqo::AlgorithmConfig cfg;
    cfg.algo = name;
    cfg.seed = 1;
    const auto r = mqo::run_algorithm(inst, cfg);
    std::string picked;
    for (mqo::NodeId id : r.selection) picked += " " + f.eq(id).label;
    std::printf("%-16s benefit %4g  expense %4g  {%s }\n", name.c_str(),
                r.benefit, r.expense, picked.c_str());
  }
  return 0;
}
