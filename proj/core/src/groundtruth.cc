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

#include "cyclex/groundtruth.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <random>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "cyclex/cycles.h"
#include "cyclex/error.h"
#include "cyclex/text.h"

namespace cyclex {
namespace {

// Memoized objective over subsets of the search space.
class Objective {
 public:
  Objective(const ObjectiveContext& context, const NodeSet& keywords,
            const DocIdSet& expected)
      : context_(context), keywords_(keywords), expected_(expected) {}

  const Evaluation& Evaluate(const NodeSet& chosen) {
    auto it = cache_.find(chosen);
    if (it != cache_.end()) return it->second;
    NodeSet expansion = keywords_;
    expansion.insert(chosen.begin(), chosen.end());
    Evaluation evaluation = cyclex::Evaluate(
        context_.index, context_.graph, expansion, expected_, context_.cutoffs);
    return cache_.emplace(chosen, std::move(evaluation)).first->second;
  }

  double operator()(const NodeSet& chosen) { return Evaluate(chosen).quality; }

 private:
  const ObjectiveContext& context_;
  const NodeSet& keywords_;
  const DocIdSet& expected_;
  std::map<NodeSet, Evaluation> cache_;
};

NodeSet Without(const NodeSet& set, NodeId id) {
  NodeSet copy = set;
  copy.erase(id);
  return copy;
}

NodeSet With(const NodeSet& set, NodeId id) {
  NodeSet copy = set;
  copy.insert(id);
  return copy;
}

std::vector<NodeId> Resolve(const nlohmann::json& titles,
                            const KnowledgeGraph& graph,
                            std::string_view query_id) {
  std::vector<NodeId> ids;
  if (!titles.is_array()) return ids;
  for (const auto& title : titles) {
    auto id = graph.FindArticle(NormalizedKey(title.get<std::string>()));
    if (!id) {
      throw Error(fmt::format("ground truth for {}: unknown article \"{}\"",
                              query_id, title.get<std::string>()));
    }
    ids.push_back(*id);
  }
  return ids;
}

nlohmann::json Titles(const NodeSet& ids, const KnowledgeGraph& graph) {
  nlohmann::json titles = nlohmann::json::array();
  for (NodeId id : ids) titles.push_back(graph.node(id).title);
  return titles;
}

}  // namespace

std::vector<Query> LoadQueries(std::istream& in) {
  std::vector<Query> queries;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (Trim(line).empty()) continue;
    auto record = nlohmann::json::parse(line, nullptr, false);
    auto fail = [&](std::string_view what) {
      throw Error(fmt::format("queries line {}: {}", line_number, what));
    };
    if (record.is_discarded() || !record.is_object()) fail("malformed JSON");
    if (!record.contains("query_id") || !record.contains("keywords") ||
        !record.contains("expected_docs") ||
        !record["expected_docs"].is_array() || !record["keywords"].is_string()) {
      fail("expected fields query_id, keywords, expected_docs");
    }
    Query query;
    const auto& id = record["query_id"];
    query.query_id = id.is_string() ? id.get<std::string>() : id.dump();
    query.keywords = record["keywords"].get<std::string>();
    for (const auto& doc : record["expected_docs"]) {
      query.expected_docs.insert(doc.is_string() ? doc.get<std::string>()
                                                 : doc.dump());
    }
    if (Trim(query.keywords).empty()) fail("empty keywords");
    if (query.expected_docs.empty()) fail("empty expected_docs");
    queries.push_back(std::move(query));
  }
  return queries;
}

GroundTruthEntry LocalSearch(const Query& query, const NodeSet& linked_keywords,
                             const NodeSet& candidates,
                             const ObjectiveContext& context,
                             std::uint64_t rng_seed) {
  GroundTruthEntry entry;
  entry.query_id = query.query_id;
  entry.linked_keywords = linked_keywords;
  entry.candidates = candidates;
  entry.rng_seed = rng_seed;

  std::vector<NodeId> space;
  for (NodeId id : candidates) {
    if (!linked_keywords.contains(id)) space.push_back(id);
  }
  Objective objective(context, linked_keywords, query.expected_docs);
  NodeSet chosen;
  if (!space.empty()) {
    std::mt19937_64 rng(rng_seed);
    chosen.insert(space[rng() % space.size()]);
  }
  entry.trajectory.push_back(objective(chosen));

  while (true) {
    // Drop members that do not pull their weight.
    for (bool dropped = true; dropped;) {
      dropped = false;
      double current = objective(chosen);
      for (NodeId x : chosen) {
        NodeSet smaller = Without(chosen, x);
        if (objective(smaller) == current) {
          chosen = std::move(smaller);
          entry.trajectory.push_back(current);
          dropped = true;
          break;
        }
      }
    }

    double best = objective(chosen);
    std::optional<NodeSet> next;
    auto consider = [&](NodeSet candidate) {
      double value = objective(candidate);
      if (value > best) {
        best = value;
        next = std::move(candidate);
      }
    };
    for (NodeId x : chosen) consider(Without(chosen, x));
    for (NodeId x : chosen) {
      for (NodeId y : space) {
        if (!chosen.contains(y)) consider(With(Without(chosen, x), y));
      }
    }
    for (NodeId y : space) {
      if (!chosen.contains(y)) consider(With(chosen, y));
    }
    if (!next) break;
    chosen = std::move(*next);
    entry.trajectory.push_back(best);
  }

  const Evaluation& final_evaluation = objective.Evaluate(chosen);
  entry.chosen = chosen;
  entry.expansion_set = linked_keywords;
  entry.expansion_set.insert(chosen.begin(), chosen.end());
  entry.quality = final_evaluation.quality;
  entry.per_r_precision = final_evaluation.per_r;
  return entry;
}

GroundTruthEntry LocalSearchWithRestarts(const Query& query,
                                         const NodeSet& linked_keywords,
                                         const NodeSet& candidates,
                                         const ObjectiveContext& context,
                                         std::uint64_t rng_seed,
                                         unsigned restarts) {
  GroundTruthEntry best = LocalSearch(query, linked_keywords, candidates,
                                      context, rng_seed);
  for (unsigned i = 1; i < restarts; ++i) {
    GroundTruthEntry entry = LocalSearch(query, linked_keywords, candidates,
                                         context, rng_seed + i);
    if (entry.quality > best.quality ||
        (entry.quality == best.quality &&
         entry.chosen.size() < best.chosen.size())) {
      best = std::move(entry);
    }
  }
  return best;
}

std::string_view NodeRoleName(NodeRole role) {
  switch (role) {
    case NodeRole::kQueryArticle:
      return "query_article";
    case NodeRole::kChosenArticle:
      return "chosen_article";
    case NodeRole::kMainArticle:
      return "main_article";
    case NodeRole::kCategory:
      return "category";
  }
  return "unknown";
}

std::optional<NodeRole> ParseNodeRole(std::string_view name) {
  for (NodeRole role : {NodeRole::kQueryArticle, NodeRole::kChosenArticle,
                        NodeRole::kMainArticle, NodeRole::kCategory}) {
    if (NodeRoleName(role) == name) return role;
  }
  return std::nullopt;
}

NodeSet QueryGraph::NodesWithRole(NodeRole role) const {
  NodeSet ids;
  for (const auto& [id, r] : roles) {
    if (r == role) ids.insert(id);
  }
  return ids;
}

QueryGraph AssembleQueryGraph(const GroundTruthEntry& entry,
                              const KnowledgeGraph& graph) {
  NodeSet expansion = entry.expansion_set;
  expansion.insert(entry.linked_keywords.begin(), entry.linked_keywords.end());
  expansion.insert(entry.chosen.begin(), entry.chosen.end());

  QueryGraph query_graph;
  query_graph.query_id = entry.query_id;
  NodeSet articles;
  for (NodeId id : expansion) {
    if (!graph.Contains(id)) {
      throw Error(fmt::format("query {}: unknown node {}", entry.query_id,
                              id.value));
    }
    if (!graph.node(id).is_article()) {
      throw Error(fmt::format("query {}: node {} is not an article",
                              entry.query_id, id.value));
    }
    articles.insert(id);
    query_graph.roles[id] = entry.linked_keywords.contains(id)
                                ? NodeRole::kQueryArticle
                                : NodeRole::kChosenArticle;
    NodeId main = graph.ResolveMain(id);
    if (!expansion.contains(main)) {
      articles.insert(main);
      query_graph.roles[main] = NodeRole::kMainArticle;
    }
  }
  NodeSet nodes = articles;
  for (NodeId article : articles) {
    for (NodeId category : graph.Categories(article)) {
      nodes.insert(category);
      query_graph.roles[category] = NodeRole::kCategory;
    }
  }
  query_graph.graph = graph.InducedSubgraph(nodes);
  return query_graph;
}

void WriteQueryGraph(const QueryGraph& query_graph,
                     const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream nodes(dir / "nodes.tsv");
  std::ofstream edges(dir / "edges.tsv");
  WriteGraphTsv(query_graph.graph, nodes, edges);
  std::ofstream roles(dir / "roles.tsv");
  for (const auto& [id, role] : query_graph.roles) {
    roles << id.value << '\t' << NodeRoleName(role) << '\n';
  }
  if (!nodes || !edges || !roles) {
    throw Error("cannot write query graph to " + dir.string());
  }
}

QueryGraph ReadQueryGraph(const std::filesystem::path& dir,
                          std::string query_id) {
  QueryGraph query_graph;
  query_graph.query_id = std::move(query_id);
  query_graph.graph = LoadGraphFiles(dir / "nodes.tsv", dir / "edges.tsv",
                                     Validation::kRelaxed);
  std::ifstream roles(dir / "roles.tsv");
  if (!roles) throw Error("cannot open " + (dir / "roles.tsv").string());
  std::string line;
  size_t line_number = 0;
  while (std::getline(roles, line)) {
    ++line_number;
    if (Trim(line).empty() || line.front() == '#') continue;
    auto fields = Split(line, '\t');
    std::optional<NodeRole> role;
    std::uint64_t id = 0;
    if (fields.size() == 2) {
      role = ParseNodeRole(Trim(fields[1]));
      id = std::stoull(fields[0]);
    }
    if (!role || !query_graph.graph.Contains(NodeId{id})) {
      throw Error(fmt::format("roles line {}: malformed record", line_number));
    }
    query_graph.roles[NodeId{id}] = *role;
  }
  return query_graph;
}

double ExpansionRatio(const GroundTruthEntry& entry) {
  if (entry.linked_keywords.empty()) return 0;
  NodeSet expansion = entry.expansion_set;
  expansion.insert(entry.linked_keywords.begin(), entry.linked_keywords.end());
  return static_cast<double>(expansion.size()) /
         static_cast<double>(entry.linked_keywords.size());
}

ComponentMetrics LargestComponentMetrics(const QueryGraph& query_graph) {
  ComponentMetrics metrics;
  metrics.query_id = query_graph.query_id;
  const KnowledgeGraph& graph = query_graph.graph;
  if (graph.empty()) return metrics;
  std::vector<std::vector<NodeId>> components = ConnectedComponents(graph);
  NodeSet largest(components.front().begin(), components.front().end());
  NodeSet query_nodes = query_graph.NodesWithRole(NodeRole::kQueryArticle);
  NodeSet expansion = query_nodes;
  for (NodeId id : query_graph.NodesWithRole(NodeRole::kChosenArticle)) {
    expansion.insert(id);
  }

  size_t articles = 0;
  for (NodeId id : largest) {
    if (graph.node(id).is_article()) ++articles;
  }
  auto count_in = [&](const NodeSet& set) {
    return static_cast<double>(std::count_if(
        set.begin(), set.end(), [&](NodeId id) { return largest.contains(id); }));
  };
  const double size = static_cast<double>(largest.size());
  metrics.size_ratio = size / static_cast<double>(graph.num_nodes());
  double query_inside = count_in(query_nodes);
  metrics.query_node_ratio =
      query_nodes.empty() ? 0.0
                          : query_inside / static_cast<double>(query_nodes.size());
  metrics.article_ratio = static_cast<double>(articles) / size;
  metrics.category_ratio = (size - static_cast<double>(articles)) / size;
  metrics.expansion_ratio =
      query_inside == 0 ? 0.0 : count_in(expansion) / query_inside;
  metrics.tpr = Tpr(graph.InducedSubgraph(largest));
  return metrics;
}

ComponentStats SummarizeComponents(std::vector<ComponentMetrics> per_graph) {
  if (per_graph.empty()) throw Error("component statistics need a query graph");
  ComponentStats stats;
  auto column = [&](double ComponentMetrics::*field) {
    std::vector<double> values;
    for (const ComponentMetrics& m : per_graph) values.push_back(m.*field);
    return Summarize(values);
  };
  stats.size_ratio = column(&ComponentMetrics::size_ratio);
  stats.query_node_ratio = column(&ComponentMetrics::query_node_ratio);
  stats.article_ratio = column(&ComponentMetrics::article_ratio);
  stats.category_ratio = column(&ComponentMetrics::category_ratio);
  stats.expansion_ratio = column(&ComponentMetrics::expansion_ratio);
  stats.per_graph = std::move(per_graph);
  return stats;
}

ComponentStats ComputeComponentStats(std::span<const QueryGraph> query_graphs) {
  std::vector<ComponentMetrics> per_graph;
  for (const QueryGraph& query_graph : query_graphs) {
    per_graph.push_back(LargestComponentMetrics(query_graph));
  }
  return SummarizeComponents(std::move(per_graph));
}

std::string GroundTruthJson(const GroundTruthEntry& entry,
                            const KnowledgeGraph& graph) {
  nlohmann::ordered_json record;
  record["query_id"] = entry.query_id;
  record["linked_keywords"] = Titles(entry.linked_keywords, graph);
  record["chosen"] = Titles(entry.chosen, graph);
  record["candidates"] = Titles(entry.candidates, graph);
  record["quality"] = Round3(entry.quality);
  nlohmann::ordered_json per_r = nlohmann::ordered_json::object();
  for (const auto& [r, p] : entry.per_r_precision) {
    per_r[std::to_string(r)] = Round3(p);
  }
  record["per_r_precision"] = per_r;
  record["rng_seed"] = entry.rng_seed;
  return record.dump();
}

GroundTruthEntry ParseGroundTruthJson(std::string_view line,
                                      const KnowledgeGraph& graph) {
  auto record = nlohmann::json::parse(line, nullptr, false);
  if (record.is_discarded() || !record.is_object() ||
      !record.contains("query_id")) {
    throw Error("malformed ground-truth record");
  }
  GroundTruthEntry entry;
  entry.query_id = record["query_id"].get<std::string>();
  for (NodeId id : Resolve(record.value("linked_keywords", nlohmann::json()),
                           graph, entry.query_id)) {
    entry.linked_keywords.insert(id);
  }
  for (NodeId id :
       Resolve(record.value("chosen", nlohmann::json()), graph, entry.query_id)) {
    entry.chosen.insert(id);
  }
  for (NodeId id : Resolve(record.value("candidates", nlohmann::json()), graph,
                           entry.query_id)) {
    entry.candidates.insert(id);
  }
  entry.expansion_set = entry.linked_keywords;
  entry.expansion_set.insert(entry.chosen.begin(), entry.chosen.end());
  entry.quality = record.value("quality", 0.0);
  if (auto it = record.find("per_r_precision");
      it != record.end() && it->is_object()) {
    for (const auto& [r, p] : it->items()) {
      entry.per_r_precision[std::stoul(r)] = p.get<double>();
    }
  }
  entry.rng_seed = record.value("rng_seed", std::uint64_t{0});
  return entry;
}

}  // namespace cyclex
