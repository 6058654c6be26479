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

#include <gtest/gtest.h>

#include <memory>
#include <utility>
#include <vector>

#include "mqo/compressed_forest.hpp"
#include "mqo/instances/fixtures.hpp"
#include "mqo/rng.hpp"
#include "test_support.hpp"

namespace mqo {
namespace {

using Edges = std::vector<std::pair<NodeId, NodeId>>;

class CompressedFig8 : public ::testing::Test {
 protected:
  CspInstance inst = fixture("fig8");
  const ExpressionForest& f = inst.forest();
  NodeId id(const char* label) const { return f.eq_by_label(label); }
  Edges edges(std::initializer_list<std::pair<const char*, const char*>> l) {
    Edges out;
    for (auto [p, c] : l) out.emplace_back(id(p), id(c));
    std::sort(out.begin(), out.end());
    return out;
  }
};

TEST_F(CompressedFig8, LinksLowestSelectedAncestors) {
  const auto cf = compress(f, {id("c1"), id("c6"), id("c7"), id("c8")});
  EXPECT_EQ(cf.edges(), edges({{"c8", "c1"}, {"c8", "c7"}, {"c6", "c7"}}));
  EXPECT_EQ(cf.selected_count(), 4u);
}

TEST_F(CompressedFig8, AddingAnIntermediateCandidateSplitsTheEdge) {
  auto cf = compress(f, {id("c1"), id("c6"), id("c7"), id("c8")});
  cf.add(id("c4"));
  EXPECT_EQ(cf.edges(), edges({{"c8", "c4"}, {"c4", "c1"}, {"c8", "c7"},
                               {"c6", "c7"}}));
  cf.remove(id("c8"));
  EXPECT_EQ(cf.edges(), edges({{"c4", "c1"}, {"c6", "c7"}}));
  EXPECT_TRUE(cf.parents(id("c4")).empty());
}

TEST_F(CompressedFig8, RemovingReattachesChildrenToFormerParents) {
  auto cf = compress(f, {id("c1"), id("c4"), id("c8")});
  cf.remove(id("c4"));
  EXPECT_EQ(cf.edges(), edges({{"c8", "c1"}}));
}

TEST_F(CompressedFig8, RejectsInvalidOperations) {
  auto cf = compress(f, {id("c1")});
  EXPECT_THROW(cf.add(id("c1")), InvalidArgumentError);
  EXPECT_THROW(cf.remove(id("c4")), InvalidArgumentError);
  EXPECT_THROW(compress(f, {id("T1")}), InvalidArgumentError);
  EXPECT_THROW(compress(f, {id("c1"), id("c1")}), InvalidArgumentError);
}

TEST(CompressedForest, IncrementalUpdatesMatchRecomputation) {
  Rng rng(42);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GeneratorConfig g;
    g.seed = seed;
    g.nodes_min = 20;
    g.nodes_max = 40;
    const auto inst = random_forest(g);
    const auto& f = inst.forest();
    const auto table = std::make_shared<AncestorTable>(f);
    CompressedForest cf(table);
    const auto cands = f.candidates();
    for (int step = 0; step < 200; ++step) {
      const NodeId c = cands[rng.below(cands.size())];
      if (cf.contains(c)) {
        cf.remove(c);
      } else {
        const std::size_t before = cf.selected_count();
        cf.add(c);
        EXPECT_LE(cf.last_touched(), before + 1);
      }
      const auto fresh = compress(f, cf.selected(), table);
      ASSERT_EQ(cf.edges(), fresh.edges()) << "seed " << seed << " step " << step;
    }
  }
}

}  // namespace
}  // namespace mqo
