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

#ifndef CYCLEX_LINKER_H_
#define CYCLEX_LINKER_H_

#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cyclex/corpus.h"
#include "cyclex/kgraph.h"
#include "cyclex/text.h"

namespace cyclex {

struct MatchedSpan {
  size_t begin = 0;  // token offsets, end exclusive
  size_t end = 0;
  NodeId article;    // main article

  friend bool operator==(const MatchedSpan&, const MatchedSpan&) = default;
};

struct LinkResult {
  NodeSet articles;
  std::vector<MatchedSpan> spans;  // ordered by begin
};

// Longest-match entity linker over article titles and redirect synonyms.
// Holds a reference to the graph, which must outlive it.
class Linker {
 public:
  static constexpr size_t kMaxSynonymsPerTerm = 20;

  explicit Linker(const KnowledgeGraph& graph,
                  size_t max_synonyms_per_term = kMaxSynonymsPerTerm);

  // Titles of the redirects pointing at the article titled `term`, in
  // ascending redirect id order and capped per term. Empty if no article has
  // that title.
  std::vector<Tokens> Synonyms(std::span<const std::string> term) const;

  LinkResult Link(std::string_view text) const;
  LinkResult LinkTokens(std::span<const std::string> tokens) const;

  const KnowledgeGraph& graph() const { return graph_; }

 private:
  std::optional<NodeId> MatchWindow(std::span<const std::string> window) const;

  const KnowledgeGraph& graph_;
  size_t max_window_ = 0;
  // Normalized title -> tokenized synonyms, only for articles with redirects.
  std::unordered_map<std::string, std::vector<Tokens>> synonyms_;
  // Redirect title -> tokens of the title it stands in for, restricted to
  // the capped synonym lists above.
  std::unordered_map<std::string, Tokens> replaces_;
};

// Convenience wrapper for the synonym lookup without a long-lived linker.
std::vector<Tokens> Synonyms(std::span<const std::string> term,
                             const KnowledgeGraph& graph);

struct DocumentLinks {
  std::map<std::string, NodeSet, std::less<>> per_document;
  NodeSet all;  // union over documents
};

DocumentLinks LinkDocuments(const Linker& linker,
                            std::span<const Document* const> docs,
                            unsigned threads = 1);
DocumentLinks LinkDocuments(const Linker& linker, const Corpus& corpus,
                            unsigned threads = 1);

}  // namespace cyclex

#endif  // CYCLEX_LINKER_H_
