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

#ifndef CYCLEX_PIPELINE_H_
#define CYCLEX_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cyclex/corpus.h"
#include "cyclex/error.h"
#include "cyclex/expander.h"
#include "cyclex/retrieval.h"

namespace cyclex {

// Everything a pipeline run depends on. Serialized as `key = value` lines;
// see ParseRunConfig for the keys.
struct RunConfig {
  std::filesystem::path nodes;
  std::filesystem::path edges;
  std::filesystem::path corpus;
  std::filesystem::path queries;
  std::filesystem::path output = "cyclex-out";
  std::filesystem::path query_graphs;  // empty: <output>/query_graphs
  XmlFieldPaths xml;
  std::vector<size_t> cutoffs = kDefaultCutoffs;
  std::uint64_t rng_seed = 42;
  unsigned restarts = 1;
  size_t max_len = 5;
  std::vector<std::set<size_t>> expansion_lengths;  // empty: default rows
  double min_category_ratio = 0;
  double min_density = 0;
  unsigned threads = 0;  // 0: CYCLEX_THREADS, then hardware concurrency

  std::vector<ExpansionConfig> ExpansionConfigs() const;
};

// Keys: nodes, edges, corpus, queries, output, query_graphs, xml.name, xml.english,
// xml.comment, cutoffs, seed, restarts, max_len, expand.lengths
// (`2,3;2,3,4` or `default`), expand.min_category_ratio,
// expand.min_density, threads. Relative paths resolve against `base_dir`.
RunConfig ParseRunConfig(std::istream& in,
                         const std::filesystem::path& base_dir);
RunConfig LoadRunConfig(const std::filesystem::path& path);
void ApplyConfigValue(RunConfig& config, std::string_view key,
                      std::string_view value,
                      const std::filesystem::path& base_dir);

// Canonical `key = value` text; equal configs give equal text.
std::string RunConfigText(const RunConfig& config);

enum class Stage {
  kIngestGraph,
  kIngestCorpus,
  kIndex,
  kLink,
  kGroundTruth,
  kAssemble,
  kAnalyze,
  kExpand,
  kReport,
};

inline constexpr Stage kAllStages[] = {
    Stage::kIngestGraph, Stage::kIngestCorpus, Stage::kIndex,
    Stage::kLink,        Stage::kGroundTruth,  Stage::kAssemble,
    Stage::kAnalyze,     Stage::kExpand,       Stage::kReport,
};

std::string_view StageName(Stage stage);

// A failure inside a stage. what() reads "stage <name>: <cause>".
class StageError : public Error {
 public:
  StageError(Stage stage, const std::string& cause);
  Stage stage() const { return stage_; }

 private:
  Stage stage_;
};

// Artifact locations below the output directory.
struct ArtifactLayout {
  std::filesystem::path root;
  std::filesystem::path query_graphs_dir;  // empty: under root

  static ArtifactLayout For(const RunConfig& config) {
    return {config.output, config.query_graphs};
  }

  std::filesystem::path graph_dir() const { return root / "graph"; }
  std::filesystem::path documents() const {
    return root / "corpus" / "documents.jsonl";
  }
  std::filesystem::path corpus_warnings() const {
    return root / "corpus" / "warnings.txt";
  }
  std::filesystem::path index() const {
    return root / "index" / "phrase_index.txt";
  }
  std::filesystem::path document_links() const {
    return root / "links" / "documents.tsv";
  }
  std::filesystem::path query_links() const {
    return root / "links" / "queries.tsv";
  }
  std::filesystem::path ground_truth() const {
    return root / "ground_truth" / "ground_truth.jsonl";
  }
  std::filesystem::path query_graphs() const {
    return query_graphs_dir.empty() ? root / "query_graphs" : query_graphs_dir;
  }
  std::filesystem::path cycles() const { return root / "analysis" / "cycles.tsv"; }
  std::filesystem::path aggregates() const {
    return root / "analysis" / "aggregates.csv";
  }
  std::filesystem::path components() const {
    return root / "analysis" / "components.tsv";
  }
  std::filesystem::path table4() const {
    return root / "expansion" / "table4.csv";
  }
  std::filesystem::path outcomes() const {
    return root / "expansion" / "outcomes.jsonl";
  }
  std::filesystem::path report_dir() const { return root / "report"; }
  std::filesystem::path manifest() const { return root / "manifest.txt"; }
  std::filesystem::path stage_marker(Stage stage) const;
};

// Checks paths and parameters; throws StageError naming the first stage
// that cannot run.
void ValidateRunConfig(const RunConfig& config);

// Runs one stage from the artifacts of the previous ones. Throws
// StageError.
void RunStage(Stage stage, const RunConfig& config);

// All stages in order. With `resume`, stages whose completion marker matches
// the current configuration are skipped.
void RunPipeline(const RunConfig& config, bool resume = false);

// Query id as a file-system-safe directory name.
std::string QueryDirectoryName(std::string_view query_id);

// Builds the Markdown tables and figure series under `report_dir` from the
// artifacts in `layout`. Throws naming the first missing artifact.
void WriteReport(const ArtifactLayout& layout, std::uint64_t rng_seed,
                 const std::vector<size_t>& cutoffs, size_t max_len);

}  // namespace cyclex

#endif  // CYCLEX_PIPELINE_H_
