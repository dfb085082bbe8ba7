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

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

#include "cyclex/error.h"
#include "cyclex/parallel.h"
#include "cyclex/stats.h"

namespace cyclex {
namespace {

// Dense undirected view of the cycle-eligible part of a graph. Dense indices
// follow NodeId order, so index comparisons agree with id comparisons.
struct DenseGraph {
  std::vector<NodeId> ids;
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  std::vector<std::vector<std::uint32_t>> undirected;
  std::vector<std::vector<std::uint32_t>> out;  // directed, for 2-cycles

  bool Reciprocal(std::uint32_t u, std::uint32_t v) const {
    return std::binary_search(out[u].begin(), out[u].end(), v) &&
           std::binary_search(out[v].begin(), out[v].end(), u);
  }
};

void SortUnique(std::vector<std::uint32_t>& list) {
  std::sort(list.begin(), list.end());
  list.erase(std::unique(list.begin(), list.end()), list.end());
}

DenseGraph BuildCycleView(const KnowledgeGraph& graph) {
  DenseGraph dense;
  for (const Node& node : graph.nodes()) {
    if (node.is_redirect) continue;
    dense.index.emplace(node.id.value,
                        static_cast<std::uint32_t>(dense.ids.size()));
    dense.ids.push_back(node.id);
  }
  dense.undirected.resize(dense.ids.size());
  dense.out.resize(dense.ids.size());
  for (const Edge& edge : graph.edges()) {
    if (edge.kind == EdgeKind::kRedirect) continue;
    auto src = dense.index.find(edge.src.value);
    auto dst = dense.index.find(edge.dst.value);
    if (src == dense.index.end() || dst == dense.index.end()) continue;
    dense.undirected[src->second].push_back(dst->second);
    dense.undirected[dst->second].push_back(src->second);
    dense.out[src->second].push_back(dst->second);
  }
  for (auto& list : dense.undirected) SortUnique(list);
  for (auto& list : dense.out) SortUnique(list);
  return dense;
}

// Depth-bounded search for the cycles whose lowest-ranked seed is `start`.
// Each cycle is reported once: seeds of lower rank are never entered and of
// the two traversal directions only the one with path[1] < path.back() is
// kept.
class SeedSearch {
 public:
  SeedSearch(const DenseGraph& graph, const std::vector<int>& seed_rank,
             std::uint32_t start, size_t max_len)
      : graph_(graph),
        seed_rank_(seed_rank),
        start_(start),
        rank_(seed_rank[start]),
        max_len_(max_len),
        on_path_(graph.ids.size(), 0),
        closes_(graph.ids.size(), 0) {}

  std::vector<std::vector<std::uint32_t>> Run() {
    for (std::uint32_t v : graph_.undirected[start_]) closes_[v] = 1;
    if (max_len_ >= 2) {
      for (std::uint32_t v : graph_.out[start_]) {
        if (Allowed(v) && graph_.Reciprocal(start_, v)) {
          found_.push_back({start_, v});
        }
      }
    }
    if (max_len_ >= 3) {
      path_.push_back(start_);
      on_path_[start_] = 1;
      Extend();
    }
    return std::move(found_);
  }

 private:
  bool Allowed(std::uint32_t v) const {
    return seed_rank_[v] < 0 || seed_rank_[v] > rank_;
  }

  void Extend() {
    const std::uint32_t current = path_.back();
    const size_t depth = path_.size();
    for (std::uint32_t next : graph_.undirected[current]) {
      if (next == start_) {
        if (depth >= 3 && path_[1] < current) found_.push_back(path_);
        continue;
      }
      if (depth == max_len_ || on_path_[next] || !Allowed(next)) continue;
      // The node that fills the last slot has to close the cycle.
      if (depth + 1 == max_len_ && !closes_[next]) continue;
      path_.push_back(next);
      on_path_[next] = 1;
      Extend();
      on_path_[next] = 0;
      path_.pop_back();
    }
  }

  const DenseGraph& graph_;
  const std::vector<int>& seed_rank_;
  const std::uint32_t start_;
  const int rank_;
  const size_t max_len_;
  std::vector<std::uint32_t> path_;
  std::vector<char> on_path_;
  std::vector<char> closes_;
  std::vector<std::vector<std::uint32_t>> found_;
};

bool CycleLess(const Cycle& a, const Cycle& b) {
  if (a.length != b.length) return a.length < b.length;
  return a.nodes < b.nodes;
}

}  // namespace

std::vector<std::vector<NodeId>> ConnectedComponents(
    const KnowledgeGraph& graph) {
  const auto nodes = graph.nodes();
  std::unordered_map<std::uint64_t, size_t> index;
  for (size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i].id.value, i);
  std::vector<size_t> parent(nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const Edge& edge : graph.edges()) {
    size_t a = find(index.at(edge.src.value));
    size_t b = find(index.at(edge.dst.value));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<size_t, std::vector<NodeId>> groups;
  for (size_t i = 0; i < nodes.size(); ++i) {
    groups[find(i)].push_back(nodes[i].id);
  }
  std::vector<std::vector<NodeId>> components;
  components.reserve(groups.size());
  for (auto& [root, members] : groups) components.push_back(std::move(members));
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) {
              if (a.size() != b.size()) return a.size() > b.size();
              return a.front() < b.front();
            });
  return components;
}

double Tpr(const KnowledgeGraph& graph) {
  const auto nodes = graph.nodes();
  if (nodes.empty()) return 0;
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  for (size_t i = 0; i < nodes.size(); ++i) {
    index.emplace(nodes[i].id.value, static_cast<std::uint32_t>(i));
  }
  std::vector<std::vector<std::uint32_t>> adjacency(nodes.size());
  for (const Edge& edge : graph.edges()) {
    std::uint32_t a = index.at(edge.src.value);
    std::uint32_t b = index.at(edge.dst.value);
    if (a == b) continue;
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  }
  for (auto& list : adjacency) SortUnique(list);
  std::vector<char> in_triangle(nodes.size(), 0);
  std::vector<std::uint32_t> common;
  for (std::uint32_t u = 0; u < adjacency.size(); ++u) {
    for (std::uint32_t v : adjacency[u]) {
      if (v <= u) continue;
      common.clear();
      std::set_intersection(adjacency[u].begin(), adjacency[u].end(),
                            adjacency[v].begin(), adjacency[v].end(),
                            std::back_inserter(common));
      if (common.empty()) continue;
      in_triangle[u] = in_triangle[v] = 1;
      for (std::uint32_t w : common) in_triangle[w] = 1;
    }
  }
  auto members = std::count(in_triangle.begin(), in_triangle.end(), 1);
  return static_cast<double>(members) / static_cast<double>(nodes.size());
}

std::vector<NodeId> CanonicalCycle(std::span<const NodeId> cycle) {
  std::vector<NodeId> best;
  const size_t n = cycle.size();
  if (n == 0) return best;
  for (size_t start = 0; start < n; ++start) {
    for (int direction : {1, -1}) {
      std::vector<NodeId> candidate;
      candidate.reserve(n);
      for (size_t step = 0; step < n; ++step) {
        size_t i = direction == 1 ? (start + step) % n : (start + n - step) % n;
        candidate.push_back(cycle[i]);
      }
      if (best.empty() || candidate < best) best = std::move(candidate);
    }
  }
  return best;
}

size_t InducedEdgeCount(std::span<const NodeId> nodes,
                        const KnowledgeGraph& graph) {
  NodeSet members(nodes.begin(), nodes.end());
  size_t count = 0;
  std::set<std::pair<NodeId, NodeId>> category_pairs;
  for (NodeId u : members) {
    for (NodeId v : graph.OutNeighbors(u, EdgeKind::kLink)) {
      if (members.contains(v)) ++count;
    }
    for (NodeId v : graph.OutNeighbors(u, EdgeKind::kBelongsTo)) {
      if (members.contains(v)) ++count;
    }
    for (NodeId v : graph.OutNeighbors(u, EdgeKind::kInside)) {
      if (members.contains(v)) {
        category_pairs.emplace(std::min(u, v), std::max(u, v));
      }
    }
  }
  return count + category_pairs.size();
}

double ExtraEdgeDensity(size_t induced_edges, size_t length,
                        std::uint64_t max_edges) {
  if (max_edges <= length || induced_edges <= length) return 0;
  return static_cast<double>(induced_edges - length) /
         static_cast<double>(max_edges - length);
}

Cycle DescribeCycle(std::span<const NodeId> nodes,
                    const KnowledgeGraph& graph) {
  Cycle cycle;
  cycle.nodes = CanonicalCycle(nodes);
  cycle.length = cycle.nodes.size();
  for (NodeId id : cycle.nodes) {
    if (graph.node(id).is_category()) {
      ++cycle.n_categories;
    } else {
      ++cycle.n_articles;
    }
  }
  cycle.induced_edges = InducedEdgeCount(cycle.nodes, graph);
  cycle.category_ratio = CategoryRatio(cycle);
  cycle.extra_edge_density =
      ExtraEdgeDensity(cycle.induced_edges, cycle.length,
                       MaxEdges(cycle.n_articles, cycle.n_categories));
  return cycle;
}

std::vector<Cycle> EnumerateCycles(const KnowledgeGraph& graph,
                                   const NodeSet& seeds, size_t max_len,
                                   unsigned threads) {
  if (max_len < 2) {
    throw Error(fmt::format("max cycle length must be at least 2, got {}",
                            max_len));
  }
  for (NodeId seed : seeds) {
    if (!graph.Contains(seed) || !graph.node(seed).is_article()) {
      throw Error(fmt::format("seed {} is not an article", seed.value));
    }
  }
  DenseGraph dense = BuildCycleView(graph);
  std::vector<int> seed_rank(dense.ids.size(), -1);
  std::vector<std::uint32_t> starts;
  for (NodeId seed : seeds) {
    auto it = dense.index.find(seed.value);
    if (it == dense.index.end()) continue;  // redirect seeds close no cycle
    seed_rank[it->second] = static_cast<int>(starts.size());
    starts.push_back(it->second);
  }

  std::vector<std::vector<Cycle>> per_seed(starts.size());
  ParallelFor(starts.size(), threads, [&](size_t i) {
    SeedSearch search(dense, seed_rank, starts[i], max_len);
    for (const auto& path : search.Run()) {
      std::vector<NodeId> ids;
      ids.reserve(path.size());
      for (std::uint32_t v : path) ids.push_back(dense.ids[v]);
      per_seed[i].push_back(DescribeCycle(ids, graph));
    }
  });

  std::vector<Cycle> cycles;
  for (auto& list : per_seed) {
    std::move(list.begin(), list.end(), std::back_inserter(cycles));
  }
  std::sort(cycles.begin(), cycles.end(), CycleLess);
  return cycles;
}

double ContributionPercent(double base, double expanded) {
  if (base > 0) return 100.0 * (expanded - base) / base;
  return 100.0 * expanded;
}

double CycleContribution(const Cycle& cycle, const KnowledgeGraph& graph,
                         const NodeSet& linked_keywords,
                         const DocIdSet& expected, const PhraseIndex& index,
                         std::span<const size_t> cutoffs) {
  NodeSet expanded = linked_keywords;
  for (NodeId id : cycle.nodes) {
    if (graph.node(id).is_article()) expanded.insert(id);
  }
  double base = Evaluate(index, graph, linked_keywords, expected, cutoffs).quality;
  double with_cycle = Evaluate(index, graph, expanded, expected, cutoffs).quality;
  return ContributionPercent(base, with_cycle);
}

double ReciprocalPairRatio(const KnowledgeGraph& graph) {
  size_t linked = 0;
  size_t reciprocal = 0;
  for (const Edge& edge : graph.edges()) {
    if (edge.kind != EdgeKind::kLink) continue;
    bool back = graph.HasEdge(edge.dst, edge.src, EdgeKind::kLink);
    if (back) {
      if (edge.src < edge.dst) {
        ++linked;
        ++reciprocal;
      }
    } else {
      ++linked;
    }
  }
  return linked == 0 ? 0.0
                     : static_cast<double>(reciprocal) /
                           static_cast<double>(linked);
}

std::vector<LengthAggregate> AggregateByLength(
    std::span<const CycleRecord> records, size_t num_queries, size_t max_len) {
  std::vector<LengthAggregate> rows;
  for (size_t length = 2; length <= max_len; ++length) {
    LengthAggregate row;
    row.length = length;
    std::map<std::string, std::vector<double>> by_query;
    std::vector<double> contributions, ratios, densities;
    for (const CycleRecord& record : records) {
      if (record.cycle.length != length) continue;
      contributions.push_back(record.contribution);
      ratios.push_back(record.cycle.category_ratio);
      densities.push_back(record.cycle.extra_edge_density);
      by_query[record.query_id].push_back(record.contribution);
    }
    row.cycles = contributions.size();
    row.queries_with_cycles = by_query.size();
    row.mean_cycles_per_query =
        num_queries == 0 ? 0.0
                         : static_cast<double>(row.cycles) /
                               static_cast<double>(num_queries);
    row.mean_contribution = Mean(contributions);
    std::vector<double> query_means;
    for (const auto& [query, values] : by_query) {
      query_means.push_back(Mean(values));
    }
    row.mean_query_contribution = Mean(query_means);
    row.mean_category_ratio = Mean(ratios);
    row.mean_density = Mean(densities);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cyclex
