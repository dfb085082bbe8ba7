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

// cyclex: command-line driver for the cycle analysis pipeline.
//
//   cyclex run --config run.conf
//   cyclex ground-truth --config run.conf --seed 7
//   cyclex link --graph out/graph --text "gondola in venice"
//   cyclex search --index out/index/phrase_index.txt --phrases "grand canal;venice" -r 10

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cyclex/kgraph.h"
#include "cyclex/linker.h"
#include "cyclex/pipeline.h"
#include "cyclex/retrieval.h"
#include "cyclex/stats.h"
#include "cyclex/text.h"

namespace {

namespace fs = std::filesystem;

struct Overrides {
  std::string config;
  std::vector<std::string> sets;
  std::optional<std::string> graph;
  // Flag name -> config key; filled by CLI11 only when given.
  std::vector<std::pair<std::string, std::optional<std::string>>> keys;
  bool resume = false;
};

constexpr std::pair<const char*, const char*> kKeyFlags[] = {
    {"--nodes", "nodes"},
    {"--edges", "edges"},
    {"--corpus", "corpus"},
    {"--queries", "queries"},
    {"--output,-o", "output"},
    {"--query-graphs", "query_graphs"},
    {"--xml-name", "xml.name"},
    {"--xml-english", "xml.english"},
    {"--xml-comment", "xml.comment"},
    {"--cutoffs", "cutoffs"},
    {"--seed", "seed"},
    {"--restarts", "restarts"},
    {"--max-len", "max_len"},
    {"--lengths", "expand.lengths"},
    {"--min-category-ratio", "expand.min_category_ratio"},
    {"--min-density", "expand.min_density"},
    {"--threads", "threads"},
};

void AddConfigOptions(CLI::App& app, Overrides& overrides) {
  app.add_option("--config,-c", overrides.config, "key = value run configuration")
      ->check(CLI::ExistingFile);
  app.add_option("--set", overrides.sets, "override a config key (key=value)");
  app.add_option("--graph", overrides.graph,
                 "directory holding nodes.tsv and edges.tsv");
  for (const auto& [flag, key] : kKeyFlags) {
    overrides.keys.emplace_back(key, std::nullopt);
    app.add_option(flag, overrides.keys.back().second,
                   std::string("config key ") + key);
  }
}

cyclex::RunConfig BuildConfig(const Overrides& overrides) {
  cyclex::RunConfig config;
  if (!overrides.config.empty()) {
    config = cyclex::LoadRunConfig(overrides.config);
  }
  const fs::path cwd = fs::current_path();
  for (const std::string& assignment : overrides.sets) {
    size_t eq = assignment.find('=');
    if (eq == std::string::npos) {
      throw cyclex::Error("--set expects key=value, got \"" + assignment + "\"");
    }
    cyclex::ApplyConfigValue(config, cyclex::Trim(assignment.substr(0, eq)),
                             assignment.substr(eq + 1), cwd);
  }
  if (overrides.graph) {
    config.nodes = fs::path(*overrides.graph) / "nodes.tsv";
    config.edges = fs::path(*overrides.graph) / "edges.tsv";
  }
  for (const auto& [key, value] : overrides.keys) {
    if (value) cyclex::ApplyConfigValue(config, key, *value, cwd);
  }
  return config;
}

int LinkText(const cyclex::RunConfig& config, const std::string& text) {
  cyclex::KnowledgeGraph graph =
      cyclex::LoadGraphFiles(config.nodes, config.edges);
  cyclex::Linker linker(graph);
  for (cyclex::NodeId id : linker.Link(text).articles) {
    std::cout << id.value << '\t' << graph.node(id).title << '\n';
  }
  return 0;
}

int Search(const fs::path& index_path, const std::string& phrases, size_t r) {
  std::ifstream in(index_path, std::ios::binary);
  if (!in) throw cyclex::Error("cannot open index " + index_path.string());
  cyclex::PhraseIndex index = cyclex::PhraseIndex::Read(in);
  cyclex::PhraseSet query;
  for (const std::string& phrase : cyclex::Split(phrases, ';')) {
    cyclex::Tokens tokens = cyclex::Normalize(phrase);
    if (!tokens.empty()) query.insert(std::move(tokens));
  }
  size_t rank = 0;
  for (const cyclex::ScoredDoc& doc : index.Search(query, r)) {
    std::cout << ++rank << '\t' << doc.doc_id << '\t'
              << cyclex::FormatFixed3(doc.score) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cycle analysis of Wikipedia-style query graphs"};
  app.require_subcommand(1);

  // One set of overrides per subcommand; CLI11 binds to their addresses.
  std::map<CLI::App*, std::unique_ptr<Overrides>> overrides;
  auto add_command = [&](std::string name, std::string description) {
    CLI::App* sub = app.add_subcommand(std::move(name), std::move(description));
    auto& slot = overrides[sub] = std::make_unique<Overrides>();
    slot->keys.reserve(std::size(kKeyFlags));
    AddConfigOptions(*sub, *slot);
    return sub;
  };
  std::vector<std::pair<CLI::App*, cyclex::Stage>> stage_commands;
  for (cyclex::Stage stage : cyclex::kAllStages) {
    std::string name(cyclex::StageName(stage));
    stage_commands.emplace_back(add_command(name, "run the " + name + " stage"),
                                stage);
  }
  CLI::App* link = stage_commands[static_cast<int>(cyclex::Stage::kLink)].first;
  std::optional<std::string> link_text;
  link->add_option("--text", link_text,
                   "link this text against --graph and print the articles");

  CLI::App* run = add_command("run", "run every stage in order");
  run->add_flag("--resume", overrides[run]->resume,
                "skip stages already completed with the same configuration");

  CLI::App* search = app.add_subcommand("search", "exact-phrase search");
  std::string index_path;
  std::string phrases;
  size_t r = 10;
  search->add_option("--index", index_path, "phrase index file")->required();
  search->add_option("--phrases", phrases, "phrases separated by ';'")
      ->required();
  search->add_option("-r", r, "number of results");

  CLI11_PARSE(app, argc, argv);

  try {
    if (search->parsed()) return Search(index_path, phrases, r);
    if (run->parsed()) {
      cyclex::RunPipeline(BuildConfig(*overrides[run]), overrides[run]->resume);
      return 0;
    }
    for (const auto& [sub, stage] : stage_commands) {
      if (!sub->parsed()) continue;
      cyclex::RunConfig config = BuildConfig(*overrides[sub]);
      if (sub == link && link_text) return LinkText(config, *link_text);
      cyclex::RunStage(stage, config);
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "cyclex: " << e.what() << '\n';
    return 1;
  }
}
