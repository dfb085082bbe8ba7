// Copyright 2026 The Cyclex Authors.
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

#include "cyclex/cycles.h"

#include <random>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "cyclex/error.h"
#include "testing.h"

namespace cyclex {
namespace {

using ::testing::ElementsAre;
using ::testing::IsEmpty;
using testing::GraphBuilder;

std::vector<std::vector<NodeId>> NodeLists(const std::vector<Cycle>& cycles) {
  std::vector<std::vector<NodeId>> lists;
  for (const Cycle& c : cycles) lists.push_back(c.nodes);
  return lists;
}

std::vector<NodeId> Ids(std::initializer_list<std::uint64_t> values) {
  std::vector<NodeId> ids;
  for (auto v : values) ids.push_back(NodeId{v});
  return ids;
}

TEST(CanonicalCycleTest, MinimalRotationOrReflection) {
  EXPECT_EQ(CanonicalCycle(Ids({3, 1, 2})), Ids({1, 2, 3}));
  EXPECT_EQ(CanonicalCycle(Ids({3, 2, 1})), Ids({1, 2, 3}));
  EXPECT_EQ(CanonicalCycle(Ids({4, 2, 5, 1})), Ids({1, 4, 2, 5}));
  EXPECT_EQ(CanonicalCycle(Ids({7, 5})), Ids({5, 7}));
}

TEST(EnumerateCyclesTest, TwoCycleNeedsBothDirections) {
  KnowledgeGraph one_way = GraphBuilder().Article(1).Article(2).Link(1, 2).Build();
  EXPECT_THAT(EnumerateCycles(one_way, {NodeId{1}}), IsEmpty());
  KnowledgeGraph both = GraphBuilder().Article(1).Article(2).Link(1, 2).Link(2, 1).Build();
  auto cycles = EnumerateCycles(both, {NodeId{1}});
  ASSERT_EQ(cycles.size(), 1u);
  EXPECT_EQ(cycles[0].nodes, Ids({1, 2}));
  EXPECT_EQ(cycles[0].induced_edges, 2u);
  EXPECT_EQ(cycles[0].extra_edge_density, 0.0);
}

TEST(EnumerateCyclesTest, ArticleCategoryTriangle) {
  // anthrax, sheep and a shared category.
  KnowledgeGraph graph = GraphBuilder()
                             .Article(1, "anthrax")
                             .Article(2, "sheep")
                             .Category(10, "livestock diseases")
                             .Link(1, 2)
                             .Belongs(1, 10)
                             .Belongs(2, 10)
                             .Build();
  auto cycles = EnumerateCycles(graph, {NodeId{1}});
  ASSERT_EQ(cycles.size(), 1u);
  const Cycle& c = cycles[0];
  EXPECT_EQ(c.nodes, Ids({1, 2, 10}));
  EXPECT_EQ(c.n_articles, 2u);
  EXPECT_EQ(c.n_categories, 1u);
  EXPECT_EQ(c.induced_edges, 3u);
  EXPECT_DOUBLE_EQ(c.category_ratio, 1.0 / 3);
  // M = 2 + 2 + 0 = 4, density = (3 - 3) / (4 - 3) = 0.
  EXPECT_EQ(c.extra_edge_density, 0.0);
}

TEST(EnumerateCyclesTest, RedirectsNeverCloseCycles) {
  KnowledgeGraph graph = GraphBuilder()
                             .Article(1)
                             .Article(2)
                             .Redirect(3, 1)
                             .Link(2, 1)
                             .Build();
  // 3 -> 1 is a redirect; 3 has no other edges in a valid graph but the
  // relaxed builder would accept more. Nothing closes either way.
  EXPECT_THAT(EnumerateCycles(graph, {NodeId{1}, NodeId{2}}), IsEmpty());
}

TEST(EnumerateCyclesTest, SeedsFilterAndDeduplicate) {
  // Square 1-2-3-4 with chord 1-3.
  KnowledgeGraph graph = GraphBuilder()
                             .Article(1)
                             .Article(2)
                             .Article(3)
                             .Article(4)
                             .Link(1, 2)
                             .Link(2, 3)
                             .Link(3, 4)
                             .Link(4, 1)
                             .Link(1, 3)
                             .Build();
  auto all = EnumerateCycles(graph, {NodeId{1}, NodeId{2}, NodeId{3}, NodeId{4}});
  EXPECT_THAT(NodeLists(all), ElementsAre(Ids({1, 2, 3}), Ids({1, 3, 4}),
                                          Ids({1, 2, 3, 4})));
  auto only_two = EnumerateCycles(graph, {NodeId{2}});
  EXPECT_THAT(NodeLists(only_two), ElementsAre(Ids({1, 2, 3}), Ids({1, 2, 3, 4})));
  EXPECT_THAT(EnumerateCycles(graph, {NodeId{2}}, 3), ::testing::SizeIs(1));
}

TEST(EnumerateCyclesTest, RejectsBadArguments) {
  KnowledgeGraph graph = GraphBuilder().Article(1).Category(2).Build();
  EXPECT_THROW(EnumerateCycles(graph, {NodeId{1}}, 1), Error);
  EXPECT_THROW(EnumerateCycles(graph, {NodeId{2}}), Error);
  EXPECT_THROW(EnumerateCycles(graph, {NodeId{9}}), Error);
}

TEST(EnumerateCyclesTest, MatchesBruteForceOracle) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    testing::RandomGraphOptions options;
    options.nodes = 4 + trial % 6;
    options.density = 0.1 + 0.1 * (trial % 5);
    KnowledgeGraph graph = testing::RandomGraph(rng, options);
    std::vector<NodeId> articles = testing::PlainArticles(graph);
    NodeSet seeds;
    for (size_t i = 0; i < articles.size(); i += 2) seeds.insert(articles[i]);
    for (size_t max_len = 2; max_len <= 5; ++max_len) {
      auto expected = testing::OracleCycles(graph, seeds, max_len);
      EXPECT_EQ(NodeLists(EnumerateCycles(graph, seeds, max_len, 2)), expected)
          << "trial " << trial << " max_len " << max_len;
    }
  }
}

TEST(EnumerateCyclesTest, ThreadCountDoesNotMatter) {
  KnowledgeGraph graph = testing::SyntheticGraph(300, 1500, 3);
  std::vector<NodeId> articles = testing::PlainArticles(graph);
  NodeSet seeds(articles.begin(), articles.begin() + 5);
  EXPECT_EQ(NodeLists(EnumerateCycles(graph, seeds, 4, 1)),
            NodeLists(EnumerateCycles(graph, seeds, 4, 4)));
}

TEST(FormulaTest, MaxEdges) {
  EXPECT_EQ(MaxEdges(2, 0), 2u);
  EXPECT_EQ(MaxEdges(0, 2), 1u);
  EXPECT_EQ(MaxEdges(2, 1), 4u);
  EXPECT_EQ(MaxEdges(3, 2), 6u + 6u + 1u);
  EXPECT_EQ(MaxEdges(5, 0), 20u);
  EXPECT_EQ(MaxEdges(0, 5), 10u);
  EXPECT_EQ(MaxEdges(0, 0), 0u);
}

TEST(FormulaTest, ExtraEdgeDensity) {
  EXPECT_DOUBLE_EQ(ExtraEdgeDensity(5, 4, 12), 1.0 / 8);
  EXPECT_DOUBLE_EQ(ExtraEdgeDensity(12, 4, 12), 1.0);
  EXPECT_EQ(ExtraEdgeDensity(3, 3, 3), 0.0);
  EXPECT_EQ(ExtraEdgeDensity(4, 4, 4), 0.0);
}

TEST(FormulaTest, InducedEdgesCountLinkDirectionsAndInsideOnce) {
  KnowledgeGraph graph = GraphBuilder()
                             .Article(1)
                             .Article(2)
                             .Category(3)
                             .Category(4)
                             .Link(1, 2)
                             .Link(2, 1)
                             .Belongs(1, 3)
                             .Belongs(2, 4)
                             .Inside(3, 4)
                             .Inside(4, 3)
                             .Build();
  EXPECT_EQ(InducedEdgeCount(Ids({1, 2, 4, 3}), graph), 5u);
  Cycle c = DescribeCycle(Ids({1, 2, 4, 3}), graph);
  EXPECT_EQ(c.nodes, Ids({1, 2, 4, 3}));
  EXPECT_EQ(c.n_articles, 2u);
  EXPECT_EQ(c.n_categories, 2u);
  // M = 2 + 4 + 1 = 7: density (5 - 4) / (7 - 4).
  EXPECT_DOUBLE_EQ(c.extra_edge_density, 1.0 / 3);
  EXPECT_DOUBLE_EQ(c.category_ratio, 0.5);
}

TEST(FormulaTest, Contribution) {
  EXPECT_DOUBLE_EQ(ContributionPercent(0.5, 0.75), 50.0);
  EXPECT_DOUBLE_EQ(ContributionPercent(0.5, 0.25), -50.0);
  EXPECT_DOUBLE_EQ(ContributionPercent(0.4, 0.4), 0.0);
  EXPECT_DOUBLE_EQ(ContributionPercent(0.0, 0.3), 30.0);
  EXPECT_DOUBLE_EQ(ContributionPercent(0.0, 0.0), 0.0);
}

TEST(CycleContributionTest, ArticlesOnlyAreAdded) {
  KnowledgeGraph graph = GraphBuilder()
                             .Article(1, "anthrax")
                             .Article(2, "spore")
                             .Category(10, "bacteria")
                             .Link(1, 2)
                             .Belongs(1, 10)
                             .Belongs(2, 10)
                             .Build();
  PhraseIndex index = PhraseIndex::Build(testing::MakeCorpus({
      {"a", "anthrax anthrax"},
      {"b", "anthrax spore spore"},
      {"c", "bacteria"},
  }));
  Cycle cycle = DescribeCycle(Ids({1, 2, 10}), graph);
  std::vector<size_t> cutoffs = {1};
  // Base: anthrax ranks a (2) before b (1): P@1 = 0. With spore: b (3).
  double contribution =
      CycleContribution(cycle, graph, {NodeId{1}}, {"b"}, index, cutoffs);
  EXPECT_DOUBLE_EQ(contribution, 100.0);
}

TEST(TprTest, TriangleTreeAndMixed) {
  KnowledgeGraph k3 = GraphBuilder().Article(1).Article(2).Article(3)
                          .Link(1, 2).Link(2, 3).Link(3, 1).Build();
  EXPECT_EQ(Tpr(k3), 1.0);
  KnowledgeGraph tree = GraphBuilder().Article(1).Article(2).Article(3)
                            .Article(4).Link(1, 2).Link(1, 3).Link(3, 4)
                            .Link(2, 1).Build();
  EXPECT_EQ(Tpr(tree), 0.0);
  KnowledgeGraph mixed = GraphBuilder().Article(1).Article(2).Category(3)
                             .Article(4).Link(1, 2).Belongs(1, 3)
                             .Belongs(2, 3).Belongs(4, 3).Build();
  EXPECT_DOUBLE_EQ(Tpr(mixed), 0.75);
  EXPECT_EQ(Tpr(KnowledgeGraph{}), 0.0);
}

TEST(ReciprocalPairRatioTest, CountsUnorderedPairs) {
  KnowledgeGraph graph = GraphBuilder().Article(1).Article(2).Article(3)
                             .Article(4).Category(9)
                             .Link(1, 2).Link(2, 1).Link(2, 3).Link(3, 4)
                             .Link(4, 3).Link(1, 4).Belongs(1, 9).Build();
  // Pairs {1,2} {2,3} {3,4} {1,4}; reciprocal {1,2} {3,4}.
  EXPECT_DOUBLE_EQ(ReciprocalPairRatio(graph), 0.5);
  EXPECT_EQ(ReciprocalPairRatio(GraphBuilder().Article(1).Build()), 0.0);
}

TEST(ConnectedComponentsTest, LargestFirst) {
  KnowledgeGraph graph = GraphBuilder().Article(5).Article(1).Article(2)
                             .Article(3).Category(4).Link(1, 2).Belongs(2, 4)
                             .Build();
  EXPECT_THAT(ConnectedComponents(graph),
              ElementsAre(Ids({1, 2, 4}), Ids({3}), Ids({5})));
}

TEST(AggregateByLengthTest, PerCycleAndPerQueryMeans) {
  auto make = [](std::string q, size_t length, double contribution,
                 double ratio, double density) {
    CycleRecord r;
    r.query_id = std::move(q);
    r.cycle.length = length;
    r.cycle.category_ratio = ratio;
    r.cycle.extra_edge_density = density;
    r.contribution = contribution;
    return r;
  };
  std::vector<CycleRecord> records = {
      make("q1", 2, 50, 0, 0), make("q1", 2, 10, 0, 0),
      make("q2", 2, -30, 0, 0), make("q1", 3, 0, 1.0 / 3, 0.5)};
  auto rows = AggregateByLength(records, 4, 5);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].length, 2u);
  EXPECT_EQ(rows[0].cycles, 3u);
  EXPECT_EQ(rows[0].queries_with_cycles, 2u);
  EXPECT_DOUBLE_EQ(rows[0].mean_cycles_per_query, 0.75);
  EXPECT_DOUBLE_EQ(rows[0].mean_contribution, 10.0);
  EXPECT_DOUBLE_EQ(rows[0].mean_query_contribution, 0.0);
  EXPECT_DOUBLE_EQ(rows[1].mean_category_ratio, 1.0 / 3);
  EXPECT_DOUBLE_EQ(rows[1].mean_density, 0.5);
  EXPECT_EQ(rows[3].cycles, 0u);
  EXPECT_EQ(rows[3].mean_contribution, 0.0);
}

}  // namespace
}  // namespace cyclex
