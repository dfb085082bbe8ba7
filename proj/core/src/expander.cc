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

#include "cyclex/expander.h"

#include <charconv>

#include <fmt/format.h>

#include "cyclex/error.h"
#include "cyclex/parallel.h"
#include "cyclex/text.h"

namespace cyclex {
namespace {

std::map<size_t, double> MeanByCutoff(std::span<const ExpansionOutcome> outcomes,
                                      std::span<const size_t> cutoffs) {
  std::map<size_t, double> means;
  for (size_t r : cutoffs) {
    double sum = 0;
    for (const ExpansionOutcome& outcome : outcomes) {
      sum += outcome.per_r_precision.at(r);
    }
    means[r] = outcomes.empty() ? 0.0 : sum / static_cast<double>(outcomes.size());
  }
  return means;
}

const NodeSet& KeywordArticles(
    const Query& query,
    const std::map<std::string, GroundTruthEntry>& ground_truth) {
  auto it = ground_truth.find(query.query_id);
  if (it == ground_truth.end()) {
    throw Error(fmt::format("no ground truth for query {}", query.query_id));
  }
  return it->second.linked_keywords;
}

}  // namespace

std::string ExpansionConfig::Label() const {
  std::string label;
  for (size_t length : lengths) {
    if (!label.empty()) label += " & ";
    label += std::to_string(length);
  }
  return label;
}

void ValidateConfig(const ExpansionConfig& config) {
  if (config.lengths.empty()) throw Error("expansion lengths must not be empty");
  for (size_t length : config.lengths) {
    if (length < 2 || length > 5) {
      throw Error(fmt::format("invalid cycle length {}", length));
    }
  }
  if (config.min_category_ratio < 0 || config.min_category_ratio > 1 ||
      config.min_density < 0 || config.min_density > 1) {
    throw Error("expansion thresholds must lie in [0, 1]");
  }
}

std::set<size_t> ParseLengths(std::string_view text) {
  std::set<size_t> lengths;
  for (const std::string& field : Split(text, ',')) {
    std::string_view value = Trim(field);
    size_t length = 0;
    auto [ptr, ec] =
        std::from_chars(value.data(), value.data() + value.size(), length);
    if (value.empty() || ec != std::errc() ||
        ptr != value.data() + value.size() || length < 2 || length > 5) {
      throw Error(fmt::format("invalid cycle length list \"{}\"", text));
    }
    lengths.insert(length);
  }
  return lengths;
}

std::vector<ExpansionConfig> DefaultConfigurations(double min_category_ratio,
                                                   double min_density) {
  std::vector<std::set<size_t>> rows = {{2},    {3},       {4},          {5},
                                        {2, 3}, {2, 3, 4}, {2, 3, 4, 5}};
  std::vector<ExpansionConfig> configs;
  for (auto& lengths : rows) {
    configs.push_back(
        ExpansionConfig{std::move(lengths), min_category_ratio, min_density});
  }
  return configs;
}

NodeSet SelectFeatures(const KnowledgeGraph& graph, std::span<const Cycle> cycles,
                       const ExpansionConfig& config) {
  NodeSet features;
  for (const Cycle& cycle : cycles) {
    if (!config.lengths.contains(cycle.length)) continue;
    if (cycle.length >= 3 && cycle.category_ratio < config.min_category_ratio) {
      continue;
    }
    if (cycle.extra_edge_density < config.min_density) continue;
    for (NodeId id : cycle.nodes) {
      const Node& node = graph.node(id);
      if (node.is_article() && !node.is_redirect) features.insert(id);
    }
  }
  return features;
}

PrecisionRow EvaluateConfig(
    std::span<const Query> queries,
    const std::map<std::string, GroundTruthEntry>& ground_truth,
    const std::map<std::string, std::vector<Cycle>>& cycles_by_query,
    const ExpansionConfig& config, const PhraseIndex& index,
    const KnowledgeGraph& graph, std::span<const size_t> cutoffs,
    unsigned threads) {
  ValidateConfig(config);
  PrecisionRow row;
  row.label = config.Label();
  row.outcomes.resize(queries.size());
  ParallelFor(queries.size(), threads, [&](size_t i) {
    const Query& query = queries[i];
    ExpansionOutcome& outcome = row.outcomes[i];
    outcome.query_id = query.query_id;
    NodeSet expanded = KeywordArticles(query, ground_truth);
    auto cycles = cycles_by_query.find(query.query_id);
    if (cycles == cycles_by_query.end()) {
      outcome.flagged = true;
    } else {
      NodeSet features = SelectFeatures(graph, cycles->second, config);
      for (NodeId id : features) {
        outcome.features.push_back(graph.node(id).title);
      }
      expanded.insert(features.begin(), features.end());
    }
    outcome.per_r_precision =
        Evaluate(index, graph, expanded, query.expected_docs, cutoffs).per_r;
  });
  for (const ExpansionOutcome& outcome : row.outcomes) {
    if (outcome.flagged) row.flagged_queries.push_back(outcome.query_id);
  }
  row.mean_precision = MeanByCutoff(row.outcomes, cutoffs);
  return row;
}

PrecisionRow Baseline(std::span<const Query> queries,
                      const std::map<std::string, GroundTruthEntry>& ground_truth,
                      const PhraseIndex& index, const KnowledgeGraph& graph,
                      std::span<const size_t> cutoffs) {
  PrecisionRow row;
  row.label = "baseline";
  for (const Query& query : queries) {
    ExpansionOutcome outcome;
    outcome.query_id = query.query_id;
    outcome.per_r_precision =
        Evaluate(index, graph, KeywordArticles(query, ground_truth),
                 query.expected_docs, cutoffs)
            .per_r;
    row.outcomes.push_back(std::move(outcome));
  }
  row.mean_precision = MeanByCutoff(row.outcomes, cutoffs);
  return row;
}

}  // namespace cyclex
