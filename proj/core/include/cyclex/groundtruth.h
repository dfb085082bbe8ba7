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

#ifndef CYCLEX_GROUNDTRUTH_H_
#define CYCLEX_GROUNDTRUTH_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cyclex/kgraph.h"
#include "cyclex/retrieval.h"
#include "cyclex/stats.h"

namespace cyclex {

struct Query {
  std::string query_id;
  std::string keywords;
  DocIdSet expected_docs;
};

// JSONL {"query_id", "keywords", "expected_docs": [...]}. Throws with the
// line number on malformed records, empty keywords or empty expected_docs.
std::vector<Query> LoadQueries(std::istream& in);

struct GroundTruthEntry {
  std::string query_id;
  NodeSet linked_keywords;  // articles linked from the keywords
  NodeSet candidates;       // articles linked from the expected documents
  NodeSet chosen;           // selected subset of candidates
  NodeSet expansion_set;    // linked_keywords ∪ chosen
  double quality = 0;
  std::map<size_t, double> per_r_precision;
  std::uint64_t rng_seed = 0;
  // Quality after the start state and after every applied move.
  std::vector<double> trajectory;
};

// Everything the objective needs. References must outlive the context.
struct ObjectiveContext {
  const PhraseIndex& index;
  const KnowledgeGraph& graph;
  std::vector<size_t> cutoffs = kDefaultCutoffs;
};

// Hill climbing over subsets of `candidates` maximizing the mean precision
// of linked_keywords ∪ chosen.
//
// Starts from one candidate picked by `rng_seed`. Each iteration first drops
// every member whose removal leaves the quality unchanged (ascending id,
// repeated until none), then applies the single best strictly improving
// ADD, REMOVE or SWAP. Ties between equally good moves go to the first in
// the scan order REMOVE, SWAP, ADD, ids ascending. Stops when no move
// improves. Candidates that are already keyword articles are never moved.
GroundTruthEntry LocalSearch(const Query& query, const NodeSet& linked_keywords,
                             const NodeSet& candidates,
                             const ObjectiveContext& context,
                             std::uint64_t rng_seed);

// Runs LocalSearch with seeds rng_seed, rng_seed + 1, ... and keeps the best
// quality (ties: smaller chosen set, then earlier seed).
GroundTruthEntry LocalSearchWithRestarts(const Query& query,
                                         const NodeSet& linked_keywords,
                                         const NodeSet& candidates,
                                         const ObjectiveContext& context,
                                         std::uint64_t rng_seed,
                                         unsigned restarts);

enum class NodeRole { kQueryArticle, kChosenArticle, kMainArticle, kCategory };

std::string_view NodeRoleName(NodeRole role);
std::optional<NodeRole> ParseNodeRole(std::string_view name);

struct QueryGraph {
  std::string query_id;
  KnowledgeGraph graph;
  std::map<NodeId, NodeRole> roles;

  NodeSet NodesWithRole(NodeRole role) const;
};

// Induces the subgraph over X(q), the main articles of its redirects and the
// direct categories of both. Throws on ids unknown to `graph`.
QueryGraph AssembleQueryGraph(const GroundTruthEntry& entry,
                              const KnowledgeGraph& graph);

// Writes nodes.tsv, edges.tsv and roles.tsv into `dir`, and reads them back.
void WriteQueryGraph(const QueryGraph& query_graph,
                     const std::filesystem::path& dir);
QueryGraph ReadQueryGraph(const std::filesystem::path& dir,
                          std::string query_id);

// |X(q)| / |L(q.k)|, reported as 0 when no keyword article was linked.
double ExpansionRatio(const GroundTruthEntry& entry);

// Largest-component metrics of one query graph.
struct ComponentMetrics {
  std::string query_id;
  double size_ratio = 0;        // |LCC| / |G(q)|
  double query_node_ratio = 0;  // query articles inside the LCC
  double article_ratio = 0;     // articles / |LCC|
  double category_ratio = 0;    // categories / |LCC|
  double expansion_ratio = 0;   // |X ∩ LCC| / |L(q.k) ∩ LCC|, 0 if none
  double tpr = 0;               // of the LCC
};

ComponentMetrics LargestComponentMetrics(const QueryGraph& query_graph);

struct ComponentStats {
  std::vector<ComponentMetrics> per_graph;
  Quartiles size_ratio;
  Quartiles query_node_ratio;
  Quartiles article_ratio;
  Quartiles category_ratio;
  Quartiles expansion_ratio;
};

// Throws on an empty input.
ComponentStats ComputeComponentStats(std::span<const QueryGraph> query_graphs);
ComponentStats SummarizeComponents(std::vector<ComponentMetrics> per_graph);

// One ground-truth record as a single JSON line (titles instead of ids,
// numbers rounded to three decimals) and back. Parsing resolves titles
// against `graph`; the trajectory is not serialized.
std::string GroundTruthJson(const GroundTruthEntry& entry,
                            const KnowledgeGraph& graph);
GroundTruthEntry ParseGroundTruthJson(std::string_view line,
                                      const KnowledgeGraph& graph);

}  // namespace cyclex

#endif  // CYCLEX_GROUNDTRUTH_H_
