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

#ifndef CYCLEX_EXPANDER_H_
#define CYCLEX_EXPANDER_H_

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "cyclex/cycles.h"
#include "cyclex/groundtruth.h"
#include "cyclex/kgraph.h"
#include "cyclex/retrieval.h"

namespace cyclex {

struct ExpansionConfig {
  std::set<size_t> lengths;          // subset of {2, 3, 4, 5}
  double min_category_ratio = 0;     // only checked for lengths >= 3
  double min_density = 0;

  // "2", "2 & 3", ... as in the precision table.
  std::string Label() const;
};

// Throws unless lengths is non-empty and both thresholds lie in [0, 1].
void ValidateConfig(const ExpansionConfig& config);

// Parses "2,3,4,5" into a length set; throws on anything else.
std::set<size_t> ParseLengths(std::string_view text);

// The seven length configurations of the precision table: each single
// length, then 2&3, 2&3&4 and 2&3&4&5.
std::vector<ExpansionConfig> DefaultConfigurations(double min_category_ratio = 0,
                                                   double min_density = 0);

// Union of the article nodes of every cycle that passes the config. Never
// returns categories or redirects. `graph` is any graph holding the cycle
// nodes (the query graph or the full graph).
NodeSet SelectFeatures(const KnowledgeGraph& graph, std::span<const Cycle> cycles,
                       const ExpansionConfig& config);

struct ExpansionOutcome {
  std::string query_id;
  std::vector<std::string> features;  // titles, sorted by node id
  std::map<size_t, double> per_r_precision;
  bool flagged = false;  // no cycle set was available for the query
};

struct PrecisionRow {
  std::string label;
  std::map<size_t, double> mean_precision;  // averaged over queries
  std::vector<std::string> flagged_queries;
  std::vector<ExpansionOutcome> outcomes;
};

// Expands each query's keyword articles with the selected features, searches
// and averages the per-cutoff precision over queries. Queries without an
// entry in `cycles_by_query` keep their unexpanded precision and are
// flagged.
PrecisionRow EvaluateConfig(
    std::span<const Query> queries,
    const std::map<std::string, GroundTruthEntry>& ground_truth,
    const std::map<std::string, std::vector<Cycle>>& cycles_by_query,
    const ExpansionConfig& config, const PhraseIndex& index,
    const KnowledgeGraph& graph,
    std::span<const size_t> cutoffs = kDefaultCutoffs,
    unsigned threads = 1);

// Precision of the unexpanded keyword articles.
PrecisionRow Baseline(std::span<const Query> queries,
                      const std::map<std::string, GroundTruthEntry>& ground_truth,
                      const PhraseIndex& index, const KnowledgeGraph& graph,
                      std::span<const size_t> cutoffs = kDefaultCutoffs);

}  // namespace cyclex

#endif  // CYCLEX_EXPANDER_H_
