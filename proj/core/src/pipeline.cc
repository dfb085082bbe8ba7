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

#include "cyclex/pipeline.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "artifacts.h"
#include "cyclex/cycles.h"
#include "cyclex/groundtruth.h"
#include "cyclex/kgraph.h"
#include "cyclex/linker.h"
#include "cyclex/parallel.h"
#include "cyclex/stats.h"
#include "cyclex/text.h"

namespace cyclex {
namespace {

namespace fs = std::filesystem;
using internal::ArtifactWriter;
using internal::ReadTable;
using internal::SeedComment;

template <typename T>
T ParseNumber(std::string_view key, std::string_view text) {
  text = Trim(text);
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(fmt::format("config key {}: invalid number \"{}\"", key, text));
  }
  return value;
}

double ParseReal(std::string_view key, std::string_view text) {
  std::string copy(Trim(text));
  size_t used = 0;
  double value = 0;
  try {
    value = std::stod(copy, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (copy.empty() || used != copy.size()) {
    throw Error(fmt::format("config key {}: invalid number \"{}\"", key, text));
  }
  return value;
}

fs::path ResolvePath(std::string_view value, const fs::path& base_dir) {
  fs::path path(std::string(Trim(value)));
  if (path.empty() || path.is_absolute()) return path;
  return base_dir / path;
}

std::string JoinIds(const NodeSet& ids) {
  std::string text;
  for (NodeId id : ids) {
    if (!text.empty()) text.push_back(',');
    text += std::to_string(id.value);
  }
  return text;
}

NodeSet ParseIds(std::string_view text) {
  NodeSet ids;
  if (Trim(text).empty()) return ids;
  for (const std::string& field : Split(text, ',')) {
    ids.insert(NodeId{ParseNumber<std::uint64_t>("node id", field)});
  }
  return ids;
}

std::string JoinTitles(const NodeSet& ids, const KnowledgeGraph& graph) {
  std::string text;
  for (NodeId id : ids) {
    if (!text.empty()) text += " | ";
    text += graph.node(id).title;
  }
  return text;
}

KnowledgeGraph LoadIngestedGraph(const ArtifactLayout& layout) {
  return LoadGraphFiles(layout.graph_dir() / "nodes.tsv",
                        layout.graph_dir() / "edges.tsv");
}

Corpus LoadIngestedCorpus(const ArtifactLayout& layout) {
  if (!fs::exists(layout.documents())) {
    throw Error("missing artifact " + layout.documents().string());
  }
  return LoadCorpus(layout.documents()).corpus;
}

PhraseIndex LoadIngestedIndex(const ArtifactLayout& layout) {
  std::ifstream in(layout.index(), std::ios::binary);
  if (!in) throw Error("missing artifact " + layout.index().string());
  return PhraseIndex::Read(in);
}

std::vector<Query> LoadQueryFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open queries file " + path.string());
  return LoadQueries(in);
}

std::map<std::string, NodeSet, std::less<>> ReadLinks(const fs::path& path) {
  std::map<std::string, NodeSet, std::less<>> links;
  auto rows = ReadTable(path, '\t');
  for (size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() < 2) throw Error("malformed links row in " + path.string());
    links[rows[i][0]] = ParseIds(rows[i][1]);
  }
  return links;
}

std::map<std::string, GroundTruthEntry> ReadGroundTruth(
    const ArtifactLayout& layout, const KnowledgeGraph& graph) {
  std::ifstream in(layout.ground_truth(), std::ios::binary);
  if (!in) throw Error("missing artifact " + layout.ground_truth().string());
  std::map<std::string, GroundTruthEntry> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (Trim(line).empty()) continue;
    GroundTruthEntry entry = ParseGroundTruthJson(line, graph);
    entries.emplace(entry.query_id, std::move(entry));
  }
  return entries;
}

// query_id -> directory, in query file order.
std::vector<std::pair<std::string, fs::path>> ReadQueryGraphIndex(
    const fs::path& query_graphs_dir) {
  std::vector<std::pair<std::string, fs::path>> entries;
  auto rows = ReadTable(query_graphs_dir / "index.tsv", '\t');
  for (size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != 2) throw Error("malformed query graph index");
    entries.emplace_back(rows[i][0], query_graphs_dir / rows[i][1]);
  }
  return entries;
}

void WriteMarker(const ArtifactLayout& layout, Stage stage,
                 const RunConfig& config) {
  ArtifactWriter writer(layout.stage_marker(stage));
  writer.stream() << RunConfigText(config);
  writer.Commit();
}

bool MarkerMatches(const ArtifactLayout& layout, Stage stage,
                   const RunConfig& config) {
  std::ifstream in(layout.stage_marker(stage), std::ios::binary);
  if (!in) return false;
  std::ostringstream text;
  text << in.rdbuf();
  return text.str() == RunConfigText(config);
}

// --- stages ---------------------------------------------------------------

void IngestGraph(const RunConfig& config, const ArtifactLayout& layout) {
  KnowledgeGraph graph = LoadGraphFiles(config.nodes, config.edges);
  ArtifactWriter nodes(layout.graph_dir() / "nodes.tsv");
  ArtifactWriter edges(layout.graph_dir() / "edges.tsv");
  nodes.stream() << SeedComment(config.rng_seed) << '\n';
  edges.stream() << SeedComment(config.rng_seed) << '\n';
  WriteGraphTsv(graph, nodes.stream(), edges.stream());
  nodes.Commit();
  edges.Commit();

  size_t articles = 0, redirects = 0, categories = 0;
  for (const Node& node : graph.nodes()) {
    if (node.is_category()) {
      ++categories;
    } else if (node.is_redirect) {
      ++redirects;
    } else {
      ++articles;
    }
  }
  std::array<size_t, kNumEdgeKinds> by_kind{};
  for (const Edge& edge : graph.edges()) ++by_kind[static_cast<int>(edge.kind)];
  ArtifactWriter summary(layout.graph_dir() / "summary.tsv");
  auto& out = summary.stream();
  out << SeedComment(config.rng_seed) << '\n' << "metric\tvalue\n";
  out << "articles\t" << articles << "\nredirects\t" << redirects
      << "\ncategories\t" << categories << '\n';
  for (int k = 0; k < kNumEdgeKinds; ++k) {
    out << EdgeKindName(static_cast<EdgeKind>(k)) << "_edges\t" << by_kind[k]
        << '\n';
  }
  out << "reciprocal_pair_ratio\t" << FormatFixed3(ReciprocalPairRatio(graph))
      << '\n';
  summary.Commit();
}

void IngestCorpus(const RunConfig& config, const ArtifactLayout& layout) {
  CorpusLoadResult loaded =
      LoadCorpus(config.corpus, config.xml, ResolveThreads(config.threads));
  ArtifactWriter documents(layout.documents());
  for (const auto& [id, doc] : loaded.corpus) {
    nlohmann::ordered_json record = {{"doc_id", id},
                                     {"text", doc.extracted_text},
                                     {"rng_seed", config.rng_seed}};
    documents.stream() << record.dump() << '\n';
  }
  documents.Commit();
  ArtifactWriter warnings(layout.corpus_warnings());
  warnings.stream() << SeedComment(config.rng_seed) << '\n';
  for (const std::string& warning : loaded.warnings) {
    std::cerr << "warning: " << warning << '\n';
    warnings.stream() << warning << '\n';
  }
  warnings.Commit();
}

void BuildIndexStage(const RunConfig&, const ArtifactLayout& layout) {
  PhraseIndex index = PhraseIndex::Build(LoadIngestedCorpus(layout));
  ArtifactWriter writer(layout.index());
  index.Write(writer.stream());
  writer.Commit();
}

void LinkStage(const RunConfig& config, const ArtifactLayout& layout) {
  KnowledgeGraph graph = LoadIngestedGraph(layout);
  Corpus corpus = LoadIngestedCorpus(layout);
  Linker linker(graph);
  DocumentLinks links =
      LinkDocuments(linker, corpus, ResolveThreads(config.threads));
  ArtifactWriter docs(layout.document_links());
  docs.stream() << SeedComment(config.rng_seed) << '\n'
                << "doc_id\tarticle_ids\ttitles\n";
  for (const auto& [doc_id, ids] : links.per_document) {
    docs.stream() << doc_id << '\t' << JoinIds(ids) << '\t'
                  << JoinTitles(ids, graph) << '\n';
  }
  docs.Commit();

  ArtifactWriter queries(layout.query_links());
  queries.stream() << SeedComment(config.rng_seed) << '\n'
                   << "query_id\tarticle_ids\ttitles\n";
  for (const Query& query : LoadQueryFile(config.queries)) {
    NodeSet ids = linker.Link(query.keywords).articles;
    queries.stream() << query.query_id << '\t' << JoinIds(ids) << '\t'
                     << JoinTitles(ids, graph) << '\n';
  }
  queries.Commit();
}

void GroundTruthStage(const RunConfig& config, const ArtifactLayout& layout) {
  KnowledgeGraph graph = LoadIngestedGraph(layout);
  PhraseIndex index = LoadIngestedIndex(layout);
  std::vector<Query> queries = LoadQueryFile(config.queries);
  auto doc_links = ReadLinks(layout.document_links());
  auto query_links = ReadLinks(layout.query_links());

  std::vector<GroundTruthEntry> entries(queries.size());
  std::vector<std::vector<std::string>> warnings(queries.size());
  ObjectiveContext context{index, graph, config.cutoffs};
  ParallelFor(queries.size(), ResolveThreads(config.threads), [&](size_t i) {
    const Query& query = queries[i];
    NodeSet keywords;
    if (auto it = query_links.find(query.query_id); it != query_links.end()) {
      keywords = it->second;
    }
    NodeSet candidates;
    for (const std::string& doc : query.expected_docs) {
      auto it = doc_links.find(doc);
      if (it == doc_links.end()) {
        warnings[i].push_back(fmt::format(
            "query {}: expected document {} not in corpus", query.query_id, doc));
        continue;
      }
      candidates.insert(it->second.begin(), it->second.end());
    }
    entries[i] = LocalSearchWithRestarts(query, keywords, candidates, context,
                                         config.rng_seed, config.restarts);
  });
  for (const auto& list : warnings) {
    for (const std::string& warning : list) std::cerr << "warning: " << warning << '\n';
  }
  ArtifactWriter writer(layout.ground_truth());
  for (const GroundTruthEntry& entry : entries) {
    writer.stream() << GroundTruthJson(entry, graph) << '\n';
  }
  writer.Commit();
}

void AssembleStage(const RunConfig& config, const ArtifactLayout& layout) {
  KnowledgeGraph graph = LoadIngestedGraph(layout);
  auto entries = ReadGroundTruth(layout, graph);
  std::vector<Query> queries = LoadQueryFile(config.queries);
  fs::path dir = layout.query_graphs();
  std::error_code ec;
  fs::remove_all(dir, ec);
  fs::create_directories(dir);
  ArtifactWriter index(dir / "index.tsv");
  index.stream() << SeedComment(config.rng_seed) << '\n' << "query_id\tdirectory\n";
  for (const Query& query : queries) {
    auto it = entries.find(query.query_id);
    if (it == entries.end()) {
      throw Error(fmt::format("no ground truth for query {}", query.query_id));
    }
    QueryGraph query_graph = AssembleQueryGraph(it->second, graph);
    std::string name = QueryDirectoryName(query.query_id);
    WriteQueryGraph(query_graph, dir / name);
    index.stream() << query.query_id << '\t' << name << '\n';
  }
  index.Commit();
}

void AnalyzeStage(const RunConfig& config, const ArtifactLayout& layout) {
  PhraseIndex index = LoadIngestedIndex(layout);
  std::vector<Query> queries = LoadQueryFile(config.queries);
  std::map<std::string, const Query*> by_id;
  for (const Query& query : queries) by_id[query.query_id] = &query;
  auto graph_dirs = ReadQueryGraphIndex(layout.query_graphs());

  struct Analysis {
    QueryGraph query_graph;
    std::vector<CycleRecord> records;
    ComponentMetrics metrics;
    double reciprocal = 0;
  };
  std::vector<Analysis> analyses(graph_dirs.size());
  unsigned threads = ResolveThreads(config.threads);
  for (size_t i = 0; i < graph_dirs.size(); ++i) {
    const auto& [query_id, dir] = graph_dirs[i];
    auto query = by_id.find(query_id);
    if (query == by_id.end()) {
      throw Error(fmt::format("query graph for unknown query {}", query_id));
    }
    Analysis& analysis = analyses[i];
    analysis.query_graph = ReadQueryGraph(dir, query_id);
    const KnowledgeGraph& graph = analysis.query_graph.graph;
    NodeSet seeds = analysis.query_graph.NodesWithRole(NodeRole::kQueryArticle);
    std::vector<Cycle> cycles =
        EnumerateCycles(graph, seeds, config.max_len, threads);
    analysis.records.resize(cycles.size());
    ParallelFor(cycles.size(), threads, [&](size_t c) {
      analysis.records[c] = CycleRecord{
          query_id, cycles[c],
          CycleContribution(cycles[c], graph, seeds,
                            query->second->expected_docs, index,
                            config.cutoffs)};
    });
    analysis.metrics = LargestComponentMetrics(analysis.query_graph);
    analysis.reciprocal = ReciprocalPairRatio(graph);
  }

  ArtifactWriter cycles_out(layout.cycles());
  auto& out = cycles_out.stream();
  out << SeedComment(config.rng_seed) << '\n'
      << "query_id\tnodes\ttitles\tlength\tarticles\tcategories\tedges\t"
         "density\tcategory_ratio\tcontribution\n";
  std::vector<CycleRecord> all_records;
  for (const Analysis& analysis : analyses) {
    for (const CycleRecord& record : analysis.records) {
      const Cycle& cycle = record.cycle;
      std::string ids, titles;
      for (NodeId id : cycle.nodes) {
        if (!ids.empty()) {
          ids.push_back(',');
          titles += " | ";
        }
        ids += std::to_string(id.value);
        titles += analysis.query_graph.graph.node(id).title;
      }
      out << record.query_id << '\t' << ids << '\t' << titles << '\t'
          << cycle.length << '\t' << cycle.n_articles << '\t'
          << cycle.n_categories << '\t' << cycle.induced_edges << '\t'
          << FormatFixed3(cycle.extra_edge_density) << '\t'
          << FormatFixed3(cycle.category_ratio) << '\t'
          << FormatFixed3(record.contribution) << '\n';
      all_records.push_back(record);
    }
  }
  cycles_out.Commit();

  ArtifactWriter aggregates(layout.aggregates());
  aggregates.stream() << SeedComment(config.rng_seed) << '\n'
                      << "length,cycles,queries_with_cycles,"
                         "mean_cycles_per_query,mean_contribution,"
                         "mean_query_contribution,mean_category_ratio,"
                         "mean_density\n";
  for (const LengthAggregate& row :
       AggregateByLength(all_records, analyses.size(), config.max_len)) {
    aggregates.stream() << row.length << ',' << row.cycles << ','
                        << row.queries_with_cycles << ','
                        << FormatFixed3(row.mean_cycles_per_query) << ','
                        << FormatFixed3(row.mean_contribution) << ','
                        << FormatFixed3(row.mean_query_contribution) << ','
                        << FormatFixed3(row.mean_category_ratio) << ','
                        << FormatFixed3(row.mean_density) << '\n';
  }
  aggregates.Commit();

  ArtifactWriter components(layout.components());
  components.stream() << SeedComment(config.rng_seed) << '\n'
                      << "query_id\tsize_ratio\tquery_node_ratio\t"
                         "article_ratio\tcategory_ratio\texpansion_ratio\t"
                         "tpr\treciprocal_pair_ratio\tnodes\tedges\n";
  for (const Analysis& analysis : analyses) {
    const ComponentMetrics& m = analysis.metrics;
    components.stream() << m.query_id << '\t' << FormatFixed3(m.size_ratio)
                        << '\t' << FormatFixed3(m.query_node_ratio) << '\t'
                        << FormatFixed3(m.article_ratio) << '\t'
                        << FormatFixed3(m.category_ratio) << '\t'
                        << FormatFixed3(m.expansion_ratio) << '\t'
                        << FormatFixed3(m.tpr) << '\t'
                        << FormatFixed3(analysis.reciprocal) << '\t'
                        << analysis.query_graph.graph.num_nodes() << '\t'
                        << analysis.query_graph.graph.num_edges() << '\n';
  }
  components.Commit();
}

void ExpandStage(const RunConfig& config, const ArtifactLayout& layout) {
  KnowledgeGraph graph = LoadIngestedGraph(layout);
  PhraseIndex index = LoadIngestedIndex(layout);
  std::vector<Query> queries = LoadQueryFile(config.queries);
  auto ground_truth = ReadGroundTruth(layout, graph);

  // Cycle metrics come from the query graphs, not the rounded cycles.tsv.
  std::map<std::string, std::vector<Cycle>> cycles_by_query;
  std::map<std::string, QueryGraph> query_graphs;
  for (const auto& [query_id, dir] : ReadQueryGraphIndex(layout.query_graphs())) {
    query_graphs.emplace(query_id, ReadQueryGraph(dir, query_id));
    cycles_by_query[query_id];
  }
  auto rows = ReadTable(layout.cycles(), '\t');
  for (size_t i = 1; i < rows.size(); ++i) {
    const std::string& query_id = rows[i].at(0);
    auto graph_it = query_graphs.find(query_id);
    if (graph_it == query_graphs.end()) {
      throw Error(fmt::format("cycles.tsv names unknown query {}", query_id));
    }
    std::vector<NodeId> nodes;
    for (const std::string& field : Split(rows[i].at(1), ',')) {
      nodes.push_back(NodeId{ParseNumber<std::uint64_t>("node id", field)});
    }
    cycles_by_query[query_id].push_back(
        DescribeCycle(nodes, graph_it->second.graph));
  }

  unsigned threads = ResolveThreads(config.threads);
  std::vector<PrecisionRow> table;
  table.push_back(Baseline(queries, ground_truth, index, graph, config.cutoffs));
  for (const ExpansionConfig& expansion : config.ExpansionConfigs()) {
    table.push_back(EvaluateConfig(queries, ground_truth, cycles_by_query,
                                   expansion, index, graph, config.cutoffs,
                                   threads));
  }

  ArtifactWriter csv(layout.table4());
  auto& out = csv.stream();
  out << SeedComment(config.rng_seed) << '\n'
      << "configuration,min_category_ratio,min_density";
  for (size_t r : config.cutoffs) out << ",top" << r;
  out << ",flagged\n";
  for (size_t i = 0; i < table.size(); ++i) {
    const PrecisionRow& row = table[i];
    bool baseline = i == 0;
    out << row.label << ','
        << (baseline ? "" : FormatFixed3(config.min_category_ratio)) << ','
        << (baseline ? "" : FormatFixed3(config.min_density));
    for (size_t r : config.cutoffs) {
      out << ',' << FormatFixed3(row.mean_precision.at(r));
    }
    std::string flagged;
    for (const std::string& q : row.flagged_queries) {
      if (!flagged.empty()) flagged += ' ';
      flagged += q;
    }
    out << ',' << flagged << '\n';
  }
  csv.Commit();

  ArtifactWriter outcomes(layout.outcomes());
  for (const PrecisionRow& row : table) {
    for (const ExpansionOutcome& outcome : row.outcomes) {
      nlohmann::ordered_json record;
      record["configuration"] = row.label;
      record["query_id"] = outcome.query_id;
      record["features"] = outcome.features;
      nlohmann::ordered_json per_r = nlohmann::ordered_json::object();
      for (const auto& [r, p] : outcome.per_r_precision) {
        per_r[std::to_string(r)] = Round3(p);
      }
      record["per_r_precision"] = per_r;
      record["flagged"] = outcome.flagged;
      record["rng_seed"] = config.rng_seed;
      outcomes.stream() << record.dump() << '\n';
    }
  }
  outcomes.Commit();
}

}  // namespace

std::vector<ExpansionConfig> RunConfig::ExpansionConfigs() const {
  if (expansion_lengths.empty()) {
    return DefaultConfigurations(min_category_ratio, min_density);
  }
  std::vector<ExpansionConfig> configs;
  for (const auto& lengths : expansion_lengths) {
    configs.push_back(ExpansionConfig{lengths, min_category_ratio, min_density});
  }
  return configs;
}

void ApplyConfigValue(RunConfig& config, std::string_view key,
                      std::string_view value, const fs::path& base_dir) {
  value = Trim(value);
  if (key == "nodes") {
    config.nodes = ResolvePath(value, base_dir);
  } else if (key == "edges") {
    config.edges = ResolvePath(value, base_dir);
  } else if (key == "corpus") {
    config.corpus = ResolvePath(value, base_dir);
  } else if (key == "queries") {
    config.queries = ResolvePath(value, base_dir);
  } else if (key == "output") {
    config.output = ResolvePath(value, base_dir);
  } else if (key == "query_graphs") {
    config.query_graphs = ResolvePath(value, base_dir);
  } else if (key == "xml.name") {
    config.xml.name = std::string(value);
  } else if (key == "xml.english") {
    config.xml.english = std::string(value);
  } else if (key == "xml.comment") {
    config.xml.comment = std::string(value);
  } else if (key == "cutoffs") {
    config.cutoffs.clear();
    for (const std::string& field : Split(value, ',')) {
      config.cutoffs.push_back(ParseNumber<size_t>(key, field));
    }
  } else if (key == "seed") {
    config.rng_seed = ParseNumber<std::uint64_t>(key, value);
  } else if (key == "restarts") {
    config.restarts = ParseNumber<unsigned>(key, value);
  } else if (key == "max_len") {
    config.max_len = ParseNumber<size_t>(key, value);
  } else if (key == "expand.lengths") {
    config.expansion_lengths.clear();
    if (value != "default") {
      for (const std::string& row : Split(value, ';')) {
        if (Trim(row).empty()) continue;
        config.expansion_lengths.push_back(ParseLengths(row));
      }
    }
  } else if (key == "expand.min_category_ratio") {
    config.min_category_ratio = ParseReal(key, value);
  } else if (key == "expand.min_density") {
    config.min_density = ParseReal(key, value);
  } else if (key == "threads") {
    config.threads = value.empty() ? 0 : ParseNumber<unsigned>(key, value);
  } else {
    throw Error(fmt::format("unknown config key \"{}\"", key));
  }
}

RunConfig ParseRunConfig(std::istream& in, const fs::path& base_dir) {
  RunConfig config;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view text = Trim(line);
    if (text.empty() || text.front() == '#') continue;
    size_t eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw Error(fmt::format("config line {}: expected key = value",
                              line_number));
    }
    try {
      ApplyConfigValue(config, Trim(text.substr(0, eq)), text.substr(eq + 1),
                       base_dir);
    } catch (const Error& e) {
      throw Error(fmt::format("config line {}: {}", line_number, e.what()));
    }
  }
  return config;
}

RunConfig LoadRunConfig(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path.string());
  return ParseRunConfig(in, path.parent_path());
}

std::string RunConfigText(const RunConfig& config) {
  std::string lengths;
  for (const auto& row : config.expansion_lengths) {
    if (!lengths.empty()) lengths += ';';
    std::string part;
    for (size_t length : row) {
      if (!part.empty()) part += ',';
      part += std::to_string(length);
    }
    lengths += part;
  }
  std::string cutoffs;
  for (size_t r : config.cutoffs) {
    if (!cutoffs.empty()) cutoffs += ',';
    cutoffs += std::to_string(r);
  }
  // threads is not part of the text.
  return fmt::format(
      "nodes = {}\nedges = {}\ncorpus = {}\nqueries = {}\noutput = {}\n"
      "query_graphs = {}\n"
      "xml.name = {}\nxml.english = {}\nxml.comment = {}\ncutoffs = {}\n"
      "seed = {}\nrestarts = {}\nmax_len = {}\nexpand.lengths = {}\n"
      "expand.min_category_ratio = {}\nexpand.min_density = {}\n",
      config.nodes.string(), config.edges.string(), config.corpus.string(),
      config.queries.string(), config.output.string(),
      config.query_graphs.string(), config.xml.name,
      config.xml.english, config.xml.comment, cutoffs, config.rng_seed,
      config.restarts, config.max_len, lengths.empty() ? "default" : lengths,
      config.min_category_ratio, config.min_density);
}

std::string_view StageName(Stage stage) {
  switch (stage) {
    case Stage::kIngestGraph:
      return "ingest-graph";
    case Stage::kIngestCorpus:
      return "ingest-corpus";
    case Stage::kIndex:
      return "index";
    case Stage::kLink:
      return "link";
    case Stage::kGroundTruth:
      return "ground-truth";
    case Stage::kAssemble:
      return "assemble";
    case Stage::kAnalyze:
      return "analyze";
    case Stage::kExpand:
      return "expand";
    case Stage::kReport:
      return "report";
  }
  return "unknown";
}

StageError::StageError(Stage stage, const std::string& cause)
    : Error(fmt::format("stage {}: {}", StageName(stage), cause)),
      stage_(stage) {}

fs::path ArtifactLayout::stage_marker(Stage stage) const {
  return root / ".stages" / (std::string(StageName(stage)) + ".done");
}

std::string QueryDirectoryName(std::string_view query_id) {
  std::string name;
  for (char c : query_id) {
    bool safe = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                (c >= '0' && c <= '9') || c == '-' || c == '_';
    name.push_back(safe ? c : '_');
  }
  if (name.empty()) name = "_";
  return name;
}

void ValidateRunConfig(const RunConfig& config) {
  auto require_file = [](Stage stage, std::string_view what,
                         const fs::path& path) {
    std::error_code ec;
    if (path.empty() || !fs::exists(path, ec)) {
      throw StageError(stage, fmt::format("{} path \"{}\" does not exist",
                                          what, path.string()));
    }
  };
  require_file(Stage::kIngestGraph, "nodes", config.nodes);
  require_file(Stage::kIngestGraph, "edges", config.edges);
  require_file(Stage::kIngestCorpus, "corpus", config.corpus);
  require_file(Stage::kLink, "queries", config.queries);
  if (config.output.empty()) {
    throw StageError(Stage::kIngestGraph, "output directory not set");
  }
  if (config.cutoffs.empty() ||
      std::find(config.cutoffs.begin(), config.cutoffs.end(), 0u) !=
          config.cutoffs.end()) {
    throw StageError(Stage::kGroundTruth, "cutoffs must be positive");
  }
  if (config.restarts == 0) {
    throw StageError(Stage::kGroundTruth, "restarts must be at least 1");
  }
  if (config.max_len < 2 || config.max_len > 5) {
    throw StageError(Stage::kAnalyze, "max_len must lie in [2, 5]");
  }
  try {
    for (const ExpansionConfig& expansion : config.ExpansionConfigs()) {
      ValidateConfig(expansion);
    }
  } catch (const Error& e) {
    throw StageError(Stage::kExpand, e.what());
  }
}

void RunStage(Stage stage, const RunConfig& config) {
  ArtifactLayout layout = ArtifactLayout::For(config);
  try {
    fs::create_directories(layout.root);
    switch (stage) {
      case Stage::kIngestGraph:
        IngestGraph(config, layout);
        break;
      case Stage::kIngestCorpus:
        IngestCorpus(config, layout);
        break;
      case Stage::kIndex:
        BuildIndexStage(config, layout);
        break;
      case Stage::kLink:
        LinkStage(config, layout);
        break;
      case Stage::kGroundTruth:
        GroundTruthStage(config, layout);
        break;
      case Stage::kAssemble:
        AssembleStage(config, layout);
        break;
      case Stage::kAnalyze:
        AnalyzeStage(config, layout);
        break;
      case Stage::kExpand:
        ExpandStage(config, layout);
        break;
      case Stage::kReport:
        WriteReport(layout, config.rng_seed, config.cutoffs, config.max_len);
        break;
    }
    WriteMarker(layout, stage, config);
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

void RunPipeline(const RunConfig& config, bool resume) {
  ValidateRunConfig(config);
  ArtifactLayout layout = ArtifactLayout::For(config);
  fs::create_directories(layout.root);
  {
    ArtifactWriter manifest(layout.manifest());
    manifest.stream() << RunConfigText(config);
    manifest.Commit();
  }
  bool upstream_ran = false;
  for (Stage stage : kAllStages) {
    if (resume && !upstream_ran && MarkerMatches(layout, stage, config)) {
      continue;
    }
    RunStage(stage, config);
    upstream_ran = true;
  }
}

}  // namespace cyclex
