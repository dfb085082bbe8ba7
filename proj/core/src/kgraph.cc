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

#include "cyclex/kgraph.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "cyclex/error.h"
#include "cyclex/text.h"

namespace cyclex {
namespace {

[[noreturn]] void NodeError(const Node& node, std::string_view what) {
  throw Error(fmt::format("node {} ({}): {}", node.id.value, node.title, what));
}

[[noreturn]] void EdgeError(const Edge& edge, std::string_view what) {
  throw Error(fmt::format("edge {} -> {} ({}): {}", edge.src.value,
                          edge.dst.value, EdgeKindName(edge.kind), what));
}

std::optional<std::uint64_t> ParseId(std::string_view text) {
  text = Trim(text);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    return std::nullopt;
  }
  return value;
}

// Calls `fn(fields, line_number)` for every record line. JSON lines are
// flattened to the TSV field order given in `json_keys`.
template <typename Fn>
void ForEachRecord(std::istream& in, std::string_view stream_name,
                   std::span<const std::string_view> json_keys, Fn fn) {
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    std::vector<std::string> fields;
    if (trimmed.front() == '{') {
      nlohmann::json record = nlohmann::json::parse(trimmed, nullptr, false);
      if (record.is_discarded() || !record.is_object()) {
        throw Error(fmt::format("{} line {}: malformed JSON record",
                                stream_name, line_number));
      }
      for (std::string_view key : json_keys) {
        auto it = record.find(std::string(key));
        if (it == record.end()) {
          throw Error(fmt::format("{} line {}: missing field \"{}\"",
                                  stream_name, line_number, key));
        }
        if (it->is_string()) {
          fields.push_back(it->get<std::string>());
        } else {
          fields.push_back(it->dump());
        }
      }
    } else {
      fields = Split(line, '\t');
      if (fields.size() != json_keys.size()) {
        throw Error(fmt::format("{} line {}: malformed record, expected {} "
                                "tab-separated fields, got {}",
                                stream_name, line_number, json_keys.size(),
                                fields.size()));
      }
    }
    fn(fields, line_number);
  }
}

}  // namespace

std::string_view EdgeKindName(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::kLink:
      return "link";
    case EdgeKind::kRedirect:
      return "redirect";
    case EdgeKind::kBelongsTo:
      return "belongs";
    case EdgeKind::kInside:
      return "inside";
  }
  return "unknown";
}

std::optional<EdgeKind> ParseEdgeKind(std::string_view name) {
  if (name == "link") return EdgeKind::kLink;
  if (name == "redirect") return EdgeKind::kRedirect;
  if (name == "belongs") return EdgeKind::kBelongsTo;
  if (name == "inside") return EdgeKind::kInside;
  return std::nullopt;
}

std::string_view NodeKindName(const Node& node) {
  if (node.is_category()) return "category";
  return node.is_redirect ? "redirect" : "article";
}

KnowledgeGraph KnowledgeGraph::Build(std::vector<Node> nodes,
                                     std::vector<Edge> edges,
                                     Validation validation) {
  KnowledgeGraph graph;
  std::sort(nodes.begin(), nodes.end(),
            [](const Node& a, const Node& b) { return a.id < b.id; });
  graph.nodes_ = std::move(nodes);
  graph.index_.reserve(graph.nodes_.size());
  for (size_t i = 0; i < graph.nodes_.size(); ++i) {
    Node& node = graph.nodes_[i];
    if (!graph.index_.emplace(node.id.value, i).second) {
      NodeError(node, "duplicate node id");
    }
    if (node.is_category() && node.is_redirect) {
      NodeError(node, "category cannot be a redirect");
    }
    if (Trim(node.title).empty()) NodeError(node, "empty title");
    Tokens tokens = Normalize(node.title);
    if (tokens.empty()) NodeError(node, "title has no alphanumeric characters");
    node.normalized_title = JoinTokens(tokens);
    auto& titles =
        node.is_article() ? graph.article_titles_ : graph.category_names_;
    if (!titles.emplace(node.normalized_title, node.id).second) {
      NodeError(node, fmt::format("title \"{}\" not unique after normalization",
                                  node.normalized_title));
    }
    if (node.is_article()) {
      graph.max_title_tokens_ = std::max(graph.max_title_tokens_, tokens.size());
    }
  }

  std::sort(edges.begin(), edges.end());
  for (size_t i = 1; i < edges.size(); ++i) {
    if (edges[i] == edges[i - 1]) EdgeError(edges[i], "duplicate edge");
  }
  graph.adjacency_.resize(graph.nodes_.size());
  for (const Edge& edge : edges) {
    auto src = graph.index_.find(edge.src.value);
    auto dst = graph.index_.find(edge.dst.value);
    if (src == graph.index_.end() || dst == graph.index_.end()) {
      EdgeError(edge, "edge references unknown node");
    }
    const Node& from = graph.nodes_[src->second];
    const Node& to = graph.nodes_[dst->second];
    switch (edge.kind) {
      case EdgeKind::kLink:
      case EdgeKind::kRedirect:
        if (!from.is_article() || !to.is_article()) {
          EdgeError(edge, "endpoints must be articles");
        }
        if (edge.src == edge.dst) EdgeError(edge, "self loop");
        break;
      case EdgeKind::kBelongsTo:
        if (!from.is_article() || !to.is_category()) {
          EdgeError(edge, "must go from an article to a category");
        }
        break;
      case EdgeKind::kInside:
        if (!from.is_category() || !to.is_category()) {
          EdgeError(edge, "endpoints must be categories");
        }
        if (edge.src == edge.dst) EdgeError(edge, "self loop");
        break;
    }
    int k = static_cast<int>(edge.kind);
    // Edges are sorted by (src, dst), so per-node lists come out sorted.
    graph.adjacency_[src->second].out[k].push_back(edge.dst);
    graph.adjacency_[dst->second].in[k].push_back(edge.src);
  }
  for (Adjacency& adjacency : graph.adjacency_) {
    for (auto& list : adjacency.in) std::sort(list.begin(), list.end());
  }
  graph.edges_ = std::move(edges);
  if (validation == Validation::kStrict) graph.Validate();
  return graph;
}

void KnowledgeGraph::Validate() const {
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const Node& node = nodes_[i];
    if (!node.is_article()) continue;
    const Adjacency& adjacency = adjacency_[i];
    const auto& redirects = adjacency.out[static_cast<int>(EdgeKind::kRedirect)];
    const auto& categories =
        adjacency.out[static_cast<int>(EdgeKind::kBelongsTo)];
    const auto& links = adjacency.out[static_cast<int>(EdgeKind::kLink)];
    if (node.is_redirect) {
      if (!categories.empty()) NodeError(node, "redirect has category");
      if (!links.empty()) NodeError(node, "redirect has outgoing link");
      if (redirects.empty()) NodeError(node, "redirect without target");
      if (redirects.size() > 1) NodeError(node, "redirect has multiple targets");
      ResolveMain(node.id);
    } else {
      if (!redirects.empty()) {
        NodeError(node, "redirect edge from non-redirect article");
      }
      if (categories.empty()) NodeError(node, "article without category");
    }
  }
}

size_t KnowledgeGraph::IndexOf(NodeId id) const {
  auto it = index_.find(id.value);
  if (it == index_.end()) {
    throw Error(fmt::format("unknown node {}", id.value));
  }
  return it->second;
}

const Node& KnowledgeGraph::node(NodeId id) const { return nodes_[IndexOf(id)]; }

std::optional<NodeId> KnowledgeGraph::FindArticle(
    std::string_view normalized_title) const {
  auto it = article_titles_.find(std::string(normalized_title));
  if (it == article_titles_.end()) return std::nullopt;
  return it->second;
}

std::optional<NodeId> KnowledgeGraph::FindCategory(
    std::string_view normalized_name) const {
  auto it = category_names_.find(std::string(normalized_name));
  if (it == category_names_.end()) return std::nullopt;
  return it->second;
}

std::span<const NodeId> KnowledgeGraph::OutNeighbors(NodeId id,
                                                     EdgeKind kind) const {
  return adjacency_[IndexOf(id)].out[static_cast<int>(kind)];
}

std::span<const NodeId> KnowledgeGraph::InNeighbors(NodeId id,
                                                    EdgeKind kind) const {
  return adjacency_[IndexOf(id)].in[static_cast<int>(kind)];
}

bool KnowledgeGraph::HasEdge(NodeId src, NodeId dst, EdgeKind kind) const {
  if (!Contains(src)) return false;
  auto out = OutNeighbors(src, kind);
  return std::binary_search(out.begin(), out.end(), dst);
}

NodeId KnowledgeGraph::ResolveMain(NodeId article) const {
  const Node* current = &node(article);
  if (!current->is_article()) {
    throw Error(fmt::format("node {} is not an article", article.value));
  }
  std::unordered_set<std::uint64_t> seen{article.value};
  while (current->is_redirect) {
    auto targets = OutNeighbors(current->id, EdgeKind::kRedirect);
    if (targets.empty()) break;  // only possible in relaxed subgraphs
    if (!seen.insert(targets.front().value).second) {
      throw Error(fmt::format("redirect loop starting at node {}",
                              article.value));
    }
    current = &node(targets.front());
  }
  return current->id;
}

NodeSet KnowledgeGraph::UndirectedNeighbors(NodeId id,
                                            bool exclude_redirect_edges) const {
  const Adjacency& adjacency = adjacency_[IndexOf(id)];
  NodeSet neighbors;
  for (int k = 0; k < kNumEdgeKinds; ++k) {
    if (exclude_redirect_edges && k == static_cast<int>(EdgeKind::kRedirect)) {
      continue;
    }
    neighbors.insert(adjacency.out[k].begin(), adjacency.out[k].end());
    neighbors.insert(adjacency.in[k].begin(), adjacency.in[k].end());
  }
  return neighbors;
}

KnowledgeGraph KnowledgeGraph::InducedSubgraph(const NodeSet& node_set) const {
  std::vector<Node> nodes;
  nodes.reserve(node_set.size());
  for (NodeId id : node_set) nodes.push_back(node(id));
  std::vector<Edge> edges;
  for (const Edge& edge : edges_) {
    if (node_set.contains(edge.src) && node_set.contains(edge.dst)) {
      edges.push_back(edge);
    }
  }
  return Build(std::move(nodes), std::move(edges), Validation::kRelaxed);
}

KnowledgeGraph LoadGraph(std::istream& nodes_source, std::istream& edges_source,
                         Validation validation) {
  std::vector<Node> nodes;
  constexpr std::string_view kNodeKeys[] = {"id", "kind", "title"};
  ForEachRecord(nodes_source, "nodes", kNodeKeys,
                [&](const std::vector<std::string>& fields, size_t line) {
                  auto id = ParseId(fields[0]);
                  if (!id) {
                    throw Error(fmt::format("nodes line {}: bad node id \"{}\"",
                                            line, fields[0]));
                  }
                  Node node;
                  node.id = NodeId{*id};
                  std::string_view kind = Trim(fields[1]);
                  if (kind == "article") {
                    node.kind = NodeKind::kArticle;
                  } else if (kind == "redirect") {
                    node.kind = NodeKind::kArticle;
                    node.is_redirect = true;
                  } else if (kind == "category") {
                    node.kind = NodeKind::kCategory;
                  } else {
                    throw Error(fmt::format(
                        "nodes line {}: unknown node kind \"{}\"", line, kind));
                  }
                  node.title = fields[2];
                  nodes.push_back(std::move(node));
                });

  std::vector<Edge> edges;
  constexpr std::string_view kEdgeKeys[] = {"src", "dst", "kind"};
  ForEachRecord(edges_source, "edges", kEdgeKeys,
                [&](const std::vector<std::string>& fields, size_t line) {
                  auto src = ParseId(fields[0]);
                  auto dst = ParseId(fields[1]);
                  auto kind = ParseEdgeKind(Trim(fields[2]));
                  if (!src || !dst || !kind) {
                    throw Error(
                        fmt::format("edges line {}: malformed record", line));
                  }
                  edges.push_back(Edge{NodeId{*src}, NodeId{*dst}, *kind});
                });
  return KnowledgeGraph::Build(std::move(nodes), std::move(edges), validation);
}

KnowledgeGraph LoadGraphFiles(const std::filesystem::path& nodes_path,
                              const std::filesystem::path& edges_path,
                              Validation validation) {
  std::ifstream nodes(nodes_path);
  if (!nodes) throw Error("cannot open " + nodes_path.string());
  std::ifstream edges(edges_path);
  if (!edges) throw Error("cannot open " + edges_path.string());
  return LoadGraph(nodes, edges, validation);
}

void WriteGraphTsv(const KnowledgeGraph& graph, std::ostream& nodes_out,
                   std::ostream& edges_out) {
  for (const Node& node : graph.nodes()) {
    nodes_out << node.id.value << '\t' << NodeKindName(node) << '\t'
              << node.title << '\n';
  }
  for (const Edge& edge : graph.edges()) {
    edges_out << edge.src.value << '\t' << edge.dst.value << '\t'
              << EdgeKindName(edge.kind) << '\n';
  }
}

}  // namespace cyclex
