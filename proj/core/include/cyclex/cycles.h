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

#ifndef CYCLEX_CYCLES_H_
#define CYCLEX_CYCLES_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cyclex/kgraph.h"
#include "cyclex/retrieval.h"

namespace cyclex {

// A simple cycle of articles and categories with its structural metrics.
struct Cycle {
  std::vector<NodeId> nodes;  // canonical order, see CanonicalCycle
  size_t length = 0;
  size_t n_articles = 0;
  size_t n_categories = 0;
  size_t induced_edges = 0;
  double category_ratio = 0;
  double extra_edge_density = 0;
};

// Undirected components over every edge kind, largest first, ties by the
// smallest member id. Members are sorted.
std::vector<std::vector<NodeId>> ConnectedComponents(const KnowledgeGraph& graph);

// Fraction of nodes that lie on at least one triangle of the collapsed
// undirected simple graph. 0 for an empty graph.
double Tpr(const KnowledgeGraph& graph);

// Rotation/reflection of `cycle` that is lexicographically smallest.
std::vector<NodeId> CanonicalCycle(std::span<const NodeId> cycle);

// All simple cycles of length 2..max_len that contain at least one seed,
// deduplicated, sorted by (length, nodes).
//
// Adjacency ignores direction and leaves out Redirect edges and redirect
// articles. A length-2 cycle is a pair of nodes joined by edges in both
// directions. Seeds must be articles. Per-seed searches run on up to
// `threads` workers; the result does not depend on the thread count.
std::vector<Cycle> EnumerateCycles(const KnowledgeGraph& graph,
                                   const NodeSet& seeds, size_t max_len = 5,
                                   unsigned threads = 1);

// Builds a Cycle (canonicalized, all metrics filled) from a node sequence.
Cycle DescribeCycle(std::span<const NodeId> nodes, const KnowledgeGraph& graph);

// Edges of the subgraph induced by `nodes`: Link edges per direction,
// BelongsTo once, Inside once per unordered category pair. Redirect edges
// are not counted.
size_t InducedEdgeCount(std::span<const NodeId> nodes,
                        const KnowledgeGraph& graph);

// Largest possible induced edge count for a node mix under the counting
// rules of InducedEdgeCount.
constexpr std::uint64_t MaxEdges(std::uint64_t n_articles,
                                 std::uint64_t n_categories) {
  return n_articles * (n_articles == 0 ? 0 : n_articles - 1) +
         n_articles * n_categories +
         n_categories * (n_categories == 0 ? 0 : n_categories - 1) / 2;
}

// (induced - length) / (max_edges - length), or 0 when no extra edge fits.
double ExtraEdgeDensity(size_t induced_edges, size_t length,
                        std::uint64_t max_edges);

inline double CategoryRatio(const Cycle& cycle) {
  return cycle.length == 0 ? 0.0
                           : static_cast<double>(cycle.n_categories) /
                                 static_cast<double>(cycle.length);
}

// Percent change from `base` to `expanded`. With a zero base the expanded
// value itself, in percent, is returned.
double ContributionPercent(double base, double expanded);

// Contribution of the cycle's articles (categories ignored) when added to
// the query's linked keyword articles.
double CycleContribution(const Cycle& cycle, const KnowledgeGraph& graph,
                         const NodeSet& linked_keywords,
                         const DocIdSet& expected, const PhraseIndex& index,
                         std::span<const size_t> cutoffs = kDefaultCutoffs);

// Share of linked article pairs whose Link edges go both ways.
double ReciprocalPairRatio(const KnowledgeGraph& graph);

// One enumerated cycle in the context of its query.
struct CycleRecord {
  std::string query_id;
  Cycle cycle;
  double contribution = 0;
};

// Per-length series behind the contribution, count, category ratio and
// density plots.
struct LengthAggregate {
  size_t length = 0;
  size_t cycles = 0;
  size_t queries_with_cycles = 0;
  double mean_cycles_per_query = 0;
  double mean_contribution = 0;           // over cycles
  double mean_query_contribution = 0;     // mean of per-query means
  double mean_category_ratio = 0;
  double mean_density = 0;
};

// One row per length in [2, max_len], also for lengths without cycles.
std::vector<LengthAggregate> AggregateByLength(
    std::span<const CycleRecord> records, size_t num_queries,
    size_t max_len = 5);

}  // namespace cyclex

#endif  // CYCLEX_CYCLES_H_
