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

#ifndef CYCLEX_KGRAPH_H_
#define CYCLEX_KGRAPH_H_

#include <array>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cyclex {

// Opaque graph-wide node identifier. Ids need not be dense.
struct NodeId {
  std::uint64_t value = 0;

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

using NodeSet = std::set<NodeId>;

enum class NodeKind { kArticle, kCategory };

enum class EdgeKind { kLink = 0, kRedirect = 1, kBelongsTo = 2, kInside = 3 };
inline constexpr int kNumEdgeKinds = 4;

struct Node {
  NodeId id;
  NodeKind kind = NodeKind::kArticle;
  std::string title;
  std::string normalized_title;  // filled in by KnowledgeGraph::Build
  bool is_redirect = false;

  bool is_article() const { return kind == NodeKind::kArticle; }
  bool is_category() const { return kind == NodeKind::kCategory; }
};

struct Edge {
  NodeId src;
  NodeId dst;
  EdgeKind kind = EdgeKind::kLink;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

std::string_view EdgeKindName(EdgeKind kind);
std::optional<EdgeKind> ParseEdgeKind(std::string_view name);
// "article", "category" or "redirect".
std::string_view NodeKindName(const Node& node);

enum class Validation {
  kStrict,   // every article/category/redirect invariant enforced
  kRelaxed,  // edge typing and duplicates only; used for subgraphs
};

// Typed article/category graph with per-kind adjacency and title indices.
// Immutable once built; all accessors are safe for concurrent readers.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;

  // Validates and indexes the given records. Throws cyclex::Error naming the
  // offending node or edge when an invariant does not hold.
  static KnowledgeGraph Build(std::vector<Node> nodes, std::vector<Edge> edges,
                              Validation validation = Validation::kStrict);

  size_t num_nodes() const { return nodes_.size(); }
  size_t num_edges() const { return edges_.size(); }
  bool empty() const { return nodes_.empty(); }

  // Nodes sorted by id; edges sorted by (src, dst, kind).
  std::span<const Node> nodes() const { return nodes_; }
  std::span<const Edge> edges() const { return edges_; }

  bool Contains(NodeId id) const { return index_.contains(id.value); }
  // Throws on unknown ids.
  const Node& node(NodeId id) const;

  std::optional<NodeId> FindArticle(std::string_view normalized_title) const;
  std::optional<NodeId> FindCategory(std::string_view normalized_name) const;

  // Sorted neighbor ids along edges of one kind.
  std::span<const NodeId> OutNeighbors(NodeId id, EdgeKind kind) const;
  std::span<const NodeId> InNeighbors(NodeId id, EdgeKind kind) const;
  bool HasEdge(NodeId src, NodeId dst, EdgeKind kind) const;

  // Direct BelongsTo targets of an article.
  std::span<const NodeId> Categories(NodeId article) const {
    return OutNeighbors(article, EdgeKind::kBelongsTo);
  }

  // Follows Redirect edges until a non-redirect article is reached.
  // Throws "redirect loop" when the chain revisits a node.
  NodeId ResolveMain(NodeId article) const;

  // In- and out-neighbors over every edge kind, direction ignored.
  NodeSet UndirectedNeighbors(NodeId id, bool exclude_redirect_edges) const;

  // Keeps exactly the edges whose endpoints are both in `node_set`.
  KnowledgeGraph InducedSubgraph(const NodeSet& node_set) const;

  // Longest article title, in tokens.
  size_t max_title_tokens() const { return max_title_tokens_; }

 private:
  struct Adjacency {
    std::array<std::vector<NodeId>, kNumEdgeKinds> out;
    std::array<std::vector<NodeId>, kNumEdgeKinds> in;
  };

  size_t IndexOf(NodeId id) const;
  void Validate() const;

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<Adjacency> adjacency_;
  std::unordered_map<std::uint64_t, size_t> index_;
  std::unordered_map<std::string, NodeId> article_titles_;
  std::unordered_map<std::string, NodeId> category_names_;
  size_t max_title_tokens_ = 0;
};

// Reads the nodes/edges record streams. Each non-blank line that does not
// start with '#' is either TSV (`id<TAB>kind<TAB>title`,
// `src<TAB>dst<TAB>kind`) or a JSON object with the same fields.
KnowledgeGraph LoadGraph(std::istream& nodes_source,
                         std::istream& edges_source,
                         Validation validation = Validation::kStrict);
KnowledgeGraph LoadGraphFiles(const std::filesystem::path& nodes_path,
                              const std::filesystem::path& edges_path,
                              Validation validation = Validation::kStrict);

// Writes the TSV form accepted by LoadGraph.
void WriteGraphTsv(const KnowledgeGraph& graph, std::ostream& nodes_out,
                   std::ostream& edges_out);

}  // namespace cyclex

template <>
struct std::hash<cyclex::NodeId> {
  size_t operator()(const cyclex::NodeId& id) const noexcept {
    return std::hash<std::uint64_t>{}(id.value);
  }
};

#endif  // CYCLEX_KGRAPH_H_
